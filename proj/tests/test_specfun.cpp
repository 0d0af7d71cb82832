#include "doctest.h"

#include "specfun_reference.hpp"
#include "sskdv/errors.hpp"
#include "sskdv/gamma_fn.hpp"
#include "sskdv/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace sskdv;
using namespace sskdv::specfun;
using std::numbers::pi;

namespace {

double rel_diff(const ScaledValue& mine, int ref_sign, double ref_log) {
    if (ref_sign == 0) return mine.sign == 0 ? 0.0 : 1.0;
    if (mine.sign != ref_sign) return 1.0;
    return std::fabs(std::expm1(mine.log_mag - ref_log));
}

FamilyTag kFamilies[3] = {FamilyTag::AiGamma, FamilyTag::GiGamma, FamilyTag::HiGamma};

} // namespace

TEST_CASE("eval matches the frozen high-precision oracle") {
    for (const auto& r : sskdv_test::kSpecfunRef) {
        const double tol = std::fabs(r.x) <= 10.0 ? 1e-10 : 1e-8;
        const EvalReport ai = eval(FamilyTag::AiGamma, r.gamma, r.x);
        const EvalReport gi = eval(FamilyTag::GiGamma, r.gamma, r.x);
        const EvalReport hi = eval(FamilyTag::HiGamma, r.gamma, r.x);
        CAPTURE(r.gamma);
        CAPTURE(r.x);
        CHECK(rel_diff(ai.value, r.ai_sign, r.ai_log) <= tol);
        CHECK(rel_diff(gi.value, r.gi_sign, r.gi_log) <= tol);
        CHECK(rel_diff(hi.value, r.hi_sign, r.hi_log) <= tol);
        CHECK(ai.est_abs_err >= 0.0);
        const Method expect_ai =
            std::fabs(r.x) > kSwitchAiGi ? Method::asymptotic_series : Method::quadrature;
        CHECK(ai.method == expect_ai);
    }
}

TEST_CASE("classical reduction at gamma = 0") {
    for (const auto& r : sskdv_test::kSpecfunRef) {
        if (r.gamma != 0.0 || std::fabs(r.x) > 8.0) continue;
        CAPTURE(r.x);
        CHECK(rel_diff(eval(FamilyTag::AiGamma, 0.0, r.x).value, r.ai_sign, r.ai_log) <= 1e-10);
        CHECK(rel_diff(eval(FamilyTag::GiGamma, 0.0, r.x).value, r.gi_sign, r.gi_log) <= 1e-10);
        CHECK(rel_diff(eval(FamilyTag::HiGamma, 0.0, r.x).value, r.hi_sign, r.hi_log) <= 1e-10);
    }
}

TEST_CASE("values at zero") {
    // classical Airy value
    CHECK(eval_real(FamilyTag::AiGamma, 0.0, 0.0) == doctest::Approx(0.3550280539).epsilon(1e-9));
    CHECK(eval(FamilyTag::AiGamma, 0.0, 0.0).method == Method::zero_formula);

    CHECK(value_at_zero(FamilyTag::AiGamma, 0.0) ==
          doctest::Approx(-std::sin(-2.0 * pi / 3.0) * std::pow(3.0, -2.0 / 3.0) *
                          gamma_fn(1.0 / 3.0) / pi)
              .epsilon(1e-14));

    CHECK(value_at_zero(FamilyTag::HiGamma, 0.0) ==
          doctest::Approx(std::pow(3.0, -2.0 / 3.0) * gamma_fn(1.0 / 3.0) / pi).epsilon(1e-14));
    CHECK(value_at_zero(FamilyTag::HiGamma, 0.0) == doctest::Approx(0.4099).epsilon(2e-4));

    CHECK(value_at_zero(FamilyTag::HiGamma, -0.5) ==
          doctest::Approx(std::pow(3.0, -5.0 / 6.0) * gamma_fn(1.0 / 6.0) / pi).epsilon(1e-14));

    // Gi at gamma = 2: cos(0) = 1 gives -1/pi
    CHECK(value_at_zero(FamilyTag::GiGamma, 2.0) == doctest::Approx(-1.0 / pi).epsilon(1e-14));

    const double g = -0.5;
    CHECK(value_at_zero(FamilyTag::GiGamma, g) ==
          doctest::Approx(-std::cos(pi * (g - 2.0) / 3.0) * std::pow(3.0, (g - 2.0) / 3.0) *
                          gamma_fn((g + 1.0) / 3.0) / pi)
              .epsilon(1e-14));
    CHECK(eval_real(FamilyTag::GiGamma, g, 0.0) ==
          doctest::Approx(value_at_zero(FamilyTag::GiGamma, g)).epsilon(1e-13));

    CHECK_THROWS_AS(value_at_zero(FamilyTag::HiGamma, -1.0), DomainError);
}

TEST_CASE("derivative recurrence via centered differences") {
    const double h = 1e-4;
    for (double g : {-0.7, -0.5, -0.2, 0.0, 0.3}) {
        for (double x : {-8.0, -4.5, -1.0, 0.5, 2.0, 5.0, 8.0}) {
            CAPTURE(g);
            CAPTURE(x);
            for (FamilyTag f : kFamilies) {
                const double fd =
                    (eval_real(f, g, x + h) - eval_real(f, g, x - h)) / (2.0 * h);
                const double up = eval_real(f, g + 1.0, x);
                const double expect = f == FamilyTag::HiGamma ? up : -up;
                CHECK(std::fabs(fd - expect) <= 1e-6 * (1.0 + std::fabs(expect)));
            }
        }
    }
}

TEST_CASE("three-term contiguous relations") {
    for (double g : {-0.6, -0.4, -0.1, 0.2}) {
        for (double x : {-6.0, -2.0, 0.7, 3.0, 7.0}) {
            CAPTURE(g);
            CAPTURE(x);
            {
                const double a0 = eval_real(FamilyTag::AiGamma, g, x);
                const double a1 = eval_real(FamilyTag::AiGamma, g + 1.0, x);
                const double a3 = eval_real(FamilyTag::AiGamma, g + 3.0 - 1.0, x);
                // g + 3 exceeds the gamma domain; use the rewritten identity once:
                // (1+g)Ai_g - x Ai_{g+1} + Ai_{g+3} = 0, with Ai_{g+3} = x Ai_{g+1} - (1+g) Ai_g
                // checked against the ODE through Ai_{g+2}': Ai_{g+3} = -Ai_{g+2}'.
                (void)a3;
                const double h = 1e-4;
                const double a3_fd = -(eval_real(FamilyTag::AiGamma, g + 2.0, x + h) -
                                       eval_real(FamilyTag::AiGamma, g + 2.0, x - h)) /
                                     (2.0 * h);
                const double lhs = (1.0 + g) * a0 - x * a1 + a3_fd;
                CHECK(std::fabs(lhs) <=
                      1e-6 * (1.0 + std::fabs(a0) + std::fabs(x * a1)));
            }
            {
                const double h0 = eval_real(FamilyTag::HiGamma, g, x);
                const double h1 = eval_real(FamilyTag::HiGamma, g + 1.0, x);
                const double h = 1e-4;
                const double h3_fd = (eval_real(FamilyTag::HiGamma, g + 2.0, x + h) -
                                      eval_real(FamilyTag::HiGamma, g + 2.0, x - h)) /
                                     (2.0 * h);
                const double lhs = (1.0 + g) * h0 + x * h1 - h3_fd;
                CHECK(std::fabs(lhs) <= 1e-6 * (1.0 + std::fabs(h0) + std::fabs(x * h1)));
            }
        }
    }
}

TEST_CASE("three-term contiguous relations, exact families in range") {
    // For gamma <= -0.5 all of g, g+1, g+3 stay inside (-1, 2.5).
    for (double g : {-0.9, -0.7, -0.55}) {
        for (double x : {-5.0, -1.5, 0.5, 2.0, 6.0}) {
            CAPTURE(g);
            CAPTURE(x);
            const double a0 = eval_real(FamilyTag::AiGamma, g, x);
            const double a1 = eval_real(FamilyTag::AiGamma, g + 1.0, x);
            const double a3 = eval_real(FamilyTag::AiGamma, g + 3.0, x);
            CHECK(std::fabs((1.0 + g) * a0 - x * a1 + a3) <=
                  1e-8 * (1.0 + std::fabs(a0) + std::fabs(x * a1)));

            const double g0 = eval_real(FamilyTag::GiGamma, g, x);
            const double g1 = eval_real(FamilyTag::GiGamma, g + 1.0, x);
            const double g3 = eval_real(FamilyTag::GiGamma, g + 3.0, x);
            CHECK(std::fabs((1.0 + g) * g0 - x * g1 + g3) <=
                  1e-8 * (1.0 + std::fabs(g0) + std::fabs(x * g1)));

            const double i0 = eval_real(FamilyTag::HiGamma, g, x);
            const double i1 = eval_real(FamilyTag::HiGamma, g + 1.0, x);
            const double i3 = eval_real(FamilyTag::HiGamma, g + 3.0, x);
            CHECK(std::fabs((1.0 + g) * i0 + x * i1 - i3) <=
                  1e-8 * (1.0 + std::fabs(i0) + std::fabs(x * i1)));
        }
    }
}

TEST_CASE("wronskian equals Gamma(1+g)/pi^2, independent of x") {
    CHECK(wronskian(0.0, 0.0) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-10));
    CHECK(wronskian(-0.5, 0.0) ==
          doctest::Approx(std::sqrt(pi) / (pi * pi)).epsilon(1e-10));
    CHECK(std::fabs(wronskian(-0.5, 3.0) - wronskian(-0.5, 0.0)) <= 1e-8);

    for (double g : {-0.6, -0.5, -0.4, -0.1}) {
        const double expect = gamma_fn(1.0 + g) / (pi * pi);
        std::vector<double> w;
        for (double x : {-4.0, -2.0, 0.0, 2.0, 4.0}) w.push_back(wronskian(g, x));
        double mean = 0.0;
        for (double v : w) mean += v;
        mean /= w.size();
        double var = 0.0;
        for (double v : w) var += (v - mean) * (v - mean);
        const double sd = std::sqrt(var / w.size());
        CAPTURE(g);
        CHECK(sd <= 1e-8);
        CHECK(std::fabs(mean - expect) <= 1e-8);
    }
}

TEST_CASE("cross products reproduce the subdeterminant identities") {
    const double g = -0.5;
    const double c = gamma_fn(1.0 + g) / pi;

    CHECK(cross_product({FamilyTag::AiGamma, FamilyTag::GiGamma}, g, 0.0) ==
          doctest::Approx(c * value_at_zero(FamilyTag::AiGamma, -1.0 - g)).epsilon(1e-10));

    const double x = 1.0;
    const double expect_gh =
        c * (std::sin(pi * g) * eval_real(FamilyTag::AiGamma, -1.0 - g, x) -
             std::cos(pi * g) * eval_real(FamilyTag::GiGamma, -1.0 - g, x) +
             eval_real(FamilyTag::HiGamma, -1.0 - g, x));
    CHECK(cross_product({FamilyTag::GiGamma, FamilyTag::HiGamma}, g, x) ==
          doctest::Approx(expect_gh).epsilon(1e-9));

    CHECK(cross_product({FamilyTag::AiGamma, FamilyTag::AiGamma}, g, 2.0) == 0.0);

    // second identity, a couple of gammas and points
    for (double gg : {-0.7, -0.4}) {
        for (double xx : {-2.0, 0.5, 3.0}) {
            const double cc = gamma_fn(1.0 + gg) / pi;
            const double expect =
                cc * (-std::cos(pi * gg) * eval_real(FamilyTag::AiGamma, -1.0 - gg, xx) -
                      std::sin(pi * gg) * eval_real(FamilyTag::GiGamma, -1.0 - gg, xx));
            CHECK(cross_product({FamilyTag::AiGamma, FamilyTag::HiGamma}, gg, xx) ==
                  doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("Hi stays positive") {
    for (double g : {-0.9, -0.5, -0.1, 0.5, 1.5})
        for (double x : {-40.0, -12.0, -3.0, 0.0, 1.0, 8.0, 25.0, 60.0})
            CHECK(eval(FamilyTag::HiGamma, g, x).value.sign == 1);
}

TEST_CASE("quadrature/series handoff") {
    for (FamilyTag f : kFamilies) {
        const double xs = x_switch(f);
        for (double d : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            for (double sgn : {-1.0, 1.0}) {
                const double x = sgn * (xs + d);
                const EvalReport q = eval_quadrature(f, -0.5, x);
                EvalReport s = asymptotic(f, -0.5, x, 6);
                for (int n = 7; n <= 8; ++n) {
                    EvalReport t = asymptotic(f, -0.5, x, n);
                    if (t.est_abs_err < s.est_abs_err) s = t;
                }
                CAPTURE(x);
                const double rel = std::fabs(
                    std::expm1(q.value.log_mag - s.value.log_mag));
                CHECK(q.value.sign == s.value.sign);
                CHECK(rel <= 1e-7);
            }
        }
    }
}

TEST_CASE("asymptotic examples") {
    // Hi at x = -50, three terms: the explicit Gamma sum
    {
        const double g = -0.5, x = -50.0;
        double expect = 0.0;
        for (int j = 0; j < 3; ++j) {
            double jf = 1.0;
            for (int i = 2; i <= j; ++i) jf *= i;
            expect += gamma_fn(1.0 + g + 3.0 * j) / (std::pow(-3.0, j) * jf * pi) *
                      std::pow(-x, -1.0 - g - 3.0 * j);
        }
        const EvalReport r = asymptotic(FamilyTag::HiGamma, g, x, 3);
        CHECK(r.value.to_real() == doctest::Approx(expect).epsilon(1e-13));
    }
    // Ai at x = 50, leading term
    {
        const EvalReport r = asymptotic(FamilyTag::AiGamma, 0.0, 50.0, 1);
        const double log_expect =
            -std::log(2.0 * std::sqrt(pi)) - 0.25 * std::log(50.0) -
            2.0 / 3.0 * std::pow(50.0, 1.5);
        CHECK(r.value.sign == 1);
        CHECK(r.value.log_mag == doctest::Approx(log_expect).epsilon(1e-13));
    }
    // Gi at x = 50, leading term of the smooth series
    {
        const double g = -0.5;
        const EvalReport r = asymptotic(FamilyTag::GiGamma, g, 50.0, 1);
        CHECK(r.value.to_real() ==
              doctest::Approx(gamma_fn(1.0 + g) / pi * std::pow(50.0, -1.0 - g)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(asymptotic(FamilyTag::AiGamma, 0.0, 5.0, 3), RangeError);
    CHECK_THROWS_AS(asymptotic(FamilyTag::AiGamma, 0.0, 50.0, 0), DomainError);
    CHECK_THROWS_AS(asymptotic(FamilyTag::AiGamma, 0.0, 50.0, 9), DomainError);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval(FamilyTag::AiGamma, -1.0, 0.0), DomainError);
    CHECK_THROWS_AS(eval(FamilyTag::AiGamma, 2.6, 0.0), DomainError);
    CHECK_THROWS_AS(eval(FamilyTag::AiGamma, 0.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(wronskian(1.2, 0.0), DomainError);
}
