#include "doctest.h"

#include "sskdv/errors.hpp"
#include "sskdv/gamma_fn.hpp"
#include "sskdv/soliton.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace sskdv;
using namespace sskdv::soliton;
using std::numbers::pi;

namespace {

// Independent composite-Simpson oracle on [0, 40], halved until stable.
double simpson_oracle(double p, int k) {
    auto f = [&](double x) { return std::pow(x, k) * q(p, x); };
    double prev = 0.0;
    for (int n = 512; n <= 1 << 16; n *= 2) {
        const double h = 40.0 / n;
        double s = f(0.0) + f(40.0);
        for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
        s *= h / 3.0;
        if (n > 512 && std::fabs(s - prev) < 1e-12 * std::fabs(s)) return 2.0 * s;
        prev = s;
    }
    return 2.0 * prev;
}

// Closed forms via the Beta function: int sech^m(u) du = sqrt(pi) G(m/2)/G((m+1)/2).
double sech_integral(double m) {
    return std::sqrt(pi) * gamma_fn(0.5 * m) / gamma_fn(0.5 * (m + 1.0));
}

double l1_closed(double p) {
    return std::pow(0.5 * (p + 2.0), 1.0 / p) * (2.0 / p) * sech_integral(2.0 / p);
}

double l2_closed(double p) {
    return std::pow(0.5 * (p + 2.0), 2.0 / p) * (2.0 / p) * sech_integral(4.0 / p);
}

} // namespace

TEST_CASE("pointwise soliton values") {
    CHECK(q(4.0, 0.0) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-14));
    CHECK(q(4.0, 0.0) == doctest::Approx(1.3160740).epsilon(1e-7));
    CHECK(q(2.0, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(q(4.0, 1.7) == doctest::Approx(q(4.0, -1.7)).epsilon(1e-15));
    // graceful underflow far out: finite and eventually exactly zero
    CHECK(q(4.0, 500.0) >= 0.0);
    CHECK(q(4.0, 500.0) <= 1e-200);
    CHECK(q(4.0, 3000.0) == 0.0);
}

TEST_CASE("derivatives") {
    CHECK(q_deriv(4.0, 0.0, 1) == 0.0);
    const double h = 1e-5;
    for (double x : {0.5, -1.3, 2.4}) {
        const double fd = (q(4.0, x + h) - q(4.0, x - h)) / (2.0 * h);
        CHECK(q_deriv(4.0, x, 1) == doctest::Approx(fd).epsilon(1e-8));
        const double fd2 = (q(4.0, x + h) - 2.0 * q(4.0, x) + q(4.0, x - h)) / (h * h);
        CHECK(q_deriv(4.0, x, 2) == doctest::Approx(fd2).epsilon(1e-5));
    }
    CHECK(q_deriv(4.0, 0.0, 2) ==
          doctest::Approx(std::pow(3.0, 0.25) - std::pow(3.0, 1.25)).epsilon(1e-13));
}

TEST_CASE("norms and identities at p = 4") {
    const SolitonReport r = soliton_report(4.0);
    CHECK(std::fabs(r.l2_sq - std::sqrt(3.0) / 2.0 * pi) <= 1e-10 * r.l2_sq);
    CHECK(std::fabs(r.l1 - l1_closed(4.0)) <= 1e-10 * r.l1);
    CHECK(r.l1 == doctest::Approx(3.4510).epsilon(1e-4));
    CHECK(std::fabs(r.energy) <= 1e-12 * r.l2_sq);

    const double slope = std::pow(gamma_fn(0.25), 4.0) / (4.0 * pi * pi);
    CHECK(std::fabs(r.ratio - slope) <= 1e-9 * slope);
    CHECK(r.ratio == doctest::Approx(4.3768).epsilon(1e-4));
}

TEST_CASE("Pohozaev identities across p") {
    for (double p : {3.0, 4.0, 5.0, 8.0}) {
        const SolitonReport r = soliton_report(p);
        CAPTURE(p);
        // multiply by Q: ∫ Qx^2 + Q^2 - Q^{p+2} = 0
        CHECK(std::fabs(r.lx2_sq + r.l2_sq - r.lp2) <= 1e-10 * r.l2_sq);
        // multiply by x Qx: ∫ Qx^2/2 - Q^2/2 + Q^{p+2}/(p+2) = 0
        CHECK(std::fabs(0.5 * r.lx2_sq - 0.5 * r.l2_sq + r.lp2 / (p + 2.0)) <=
              1e-10 * r.l2_sq);
        // derived ratios
        CHECK(std::fabs(r.lp2 - 2.0 * (p + 2.0) / (p + 4.0) * r.l2_sq) <= 1e-10 * r.l2_sq);
        CHECK(std::fabs(r.lx2_sq - p / (p + 4.0) * r.l2_sq) <= 1e-10 * r.l2_sq);
        // energy closed form
        CHECK(std::fabs(r.energy - (p - 4.0) / (2.0 * (p + 4.0)) * r.l2_sq) <=
              1e-10 * r.l2_sq);
        // quadrature vs Beta closed forms
        CHECK(std::fabs(r.l1 - l1_closed(p)) <= 1e-11 * r.l1);
        CHECK(std::fabs(r.l2_sq - l2_closed(p)) <= 1e-11 * r.l2_sq);
    }
}

TEST_CASE("q_tilde pairings") {
    // <tilde Q, Q> = (2/p - 1/2) ||Q||_2^2, sign change at p = 4
    for (double p : {3.0, 4.0, 6.0}) {
        const SolitonReport r = soliton_report(p);
        double ip = 0.0, l1t = 0.0;
        const int n = 40000;
        const double h = 40.0 / n;
        for (int i = 0; i <= n; ++i) {
            const double x = i * h;
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            // tilde Q is even: integrate the half line and double
            ip += w * q_tilde(p, x) * q(p, x);
            l1t += w * q_tilde(p, x);
        }
        ip *= 2.0 * h / 3.0;
        l1t *= 2.0 * h / 3.0;
        CAPTURE(p);
        CHECK(std::fabs(ip - (2.0 / p - 0.5) * r.l2_sq) <= 1e-9 * r.l2_sq);
        CHECK(std::fabs(l1t - (2.0 / p - 1.0) * r.l1) <= 1e-9 * r.l1);
    }
}

TEST_CASE("energy root in p sits at 4") {
    CHECK(soliton_report(3.9).energy < 0.0);
    CHECK(soliton_report(4.1).energy > 0.0);
    double lo = 3.5, hi = 4.5;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (soliton_report(mid).energy < 0.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("moments") {
    CHECK(moment(4.0, 1) == 0.0);
    CHECK(moment(4.0, 3) == 0.0);
    CHECK(moment(4.0, 0) == doctest::Approx(soliton_report(4.0).l1).epsilon(1e-12));
    CHECK(moment(4.0, 2) == doctest::Approx(simpson_oracle(4.0, 2)).epsilon(1e-9));
    CHECK(moment(5.0, 4) == doctest::Approx(simpson_oracle(5.0, 4)).epsilon(1e-9));
}

TEST_CASE("apply_L annihilates Q_x and maps q_tilde to -2Q") {
    const double p = 4.0;
    const double h = 0.02;
    const double x0 = -25.0;
    const int n = static_cast<int>(50.0 / h) + 1;

    std::vector<double> qx(n), qt(n);
    for (int i = 0; i < n; ++i) {
        const double x = x0 + i * h;
        qx[i] = q_deriv(p, x, 1);
        qt[i] = q_tilde(p, x);
    }
    const auto lqx = apply_L(p, qx, x0, h);
    double sup = 0.0;
    for (double v : lqx) sup = std::max(sup, std::fabs(v));
    CHECK(sup <= 5.0 * h * h);

    const auto lqt = apply_L(p, qt, x0, h);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = x0 + i * h;
        worst = std::max(worst, std::fabs(lqt[i] + 2.0 * q(p, x)));
    }
    CHECK(worst <= 20.0 * h * h);

    // linearity: zero maps to zero
    const auto z = apply_L(p, std::vector<double>(n, 0.0), x0, h);
    for (double v : z) CHECK(v == 0.0);

    CHECK_THROWS_AS(apply_L(p, qx, x0, 0.1), GridError);
}

TEST_CASE("domain checks") {
    CHECK_THROWS_AS(q(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(q(201.0, 0.0), DomainError);
    CHECK_THROWS_AS(moment(4.0, 7), DomainError);
}
