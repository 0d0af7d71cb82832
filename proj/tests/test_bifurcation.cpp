#include "doctest.h"

#include "sskdv/bifurcation.hpp"
#include "sskdv/errors.hpp"
#include "sskdv/gamma_fn.hpp"
#include "sskdv/soliton.hpp"

#include <cmath>
#include <numbers>

using namespace sskdv;
using namespace sskdv::bifurcation;
using std::numbers::pi;

TEST_CASE("analytic slope") {
    const auto s = analytic_slope();
    const double g14 = gamma_fn(0.25);
    CHECK(s.closed_form ==
          doctest::Approx(g14 * g14 * g14 * g14 / (4.0 * pi * pi)).epsilon(1e-14));
    CHECK(s.closed_form == doctest::Approx(4.376879).epsilon(2e-7));
    CHECK(std::fabs(s.quadrature_ratio - s.closed_form) <= 1e-9 * s.closed_form);
    CHECK(s.closed_form / 8.0 == doctest::Approx(0.54711).epsilon(2e-5));
}

TEST_CASE("eta at and near a = 0") {
    const auto rep = soliton::soliton_report(4.0);

    CHECK(std::fabs(eta(0.0, -0.5, 4.0)) <= 1e-9);
    CHECK(std::fabs(eta(0.0, -0.45, 4.5)) <= 1e-9);

    // d eta/da (0, -1/2, p) = 0: Richardson from a in {0.005, 0.01}
    const double h = 0.005;
    const double e1 = eta(h, -0.5, 4.0);
    const double e2 = eta(2.0 * h, -0.5, 4.0);
    const double da_est = (4.0 * e1 - e2) / (2.0 * h);
    CHECK(std::fabs(da_est) <= 2e-3);

    // d^2 eta/da^2 (0,-1/2,4) = ||Q||_1^2 / (4 ||Q_x||_2^2), within 5%
    const double daa_est = (e2 - 2.0 * e1) / (h * h);
    const double daa_expect = 0.25 * rep.l1 * rep.l1 / rep.lx2_sq;
    CHECK(daa_est == doctest::Approx(daa_expect).epsilon(0.05));

    // d^2 eta/(da dgamma) = ||Q||_2^2 / ||Q_x||_2^2
    const double dg = 0.02;
    const double up = (4.0 * eta(h, -0.5 + dg, 4.0) - eta(2.0 * h, -0.5 + dg, 4.0)) / (2.0 * h);
    const double dn = (4.0 * eta(h, -0.5 - dg, 4.0) - eta(2.0 * h, -0.5 - dg, 4.0)) / (2.0 * h);
    const double mixed = (up - dn) / (2.0 * dg);
    CHECK(mixed == doctest::Approx(rep.l2_sq / rep.lx2_sq).epsilon(0.02));
}

TEST_CASE("solve_p at 0 and 0.1") {
    const BranchPoint b0 = solve_p(0.0);
    CHECK(b0.p == 4.0);
    CHECK(b0.gamma == -0.5);
    CHECK(std::fabs(b0.eta) <= 1e-9);

    const BranchPoint b1 = solve_p(0.1);
    CHECK(b1.p == doctest::Approx(4.54).epsilon(0.03));      // paper's rounded caption
    CHECK(b1.p == doctest::Approx(4.564015).epsilon(1e-5));  // frozen artifact value
    CHECK(b1.gamma == doctest::Approx(2.0 / b1.p - 1.0).epsilon(1e-14));
    CHECK(std::fabs(b1.eta) <= 1e-8);
    CHECK(std::fabs(b1.energy) <= 1e-4);
}

TEST_CASE("solve_gamma") {
    CHECK(solve_gamma(0.0, 4.0) == -0.5);
    CHECK(solve_gamma(0.0, 6.0) == -0.5);

    const double g05 = solve_gamma(0.05, 4.0);
    CHECK(g05 == doctest::Approx(-0.5 - 0.0274).epsilon(0.05));

    // FD slope magnitude |dgamma/da| at (0,4); the paper prints the magnitude
    const double h = 0.01;
    const double slope =
        (-3.0 * (-0.5) + 4.0 * solve_gamma(h, 4.0) - solve_gamma(2.0 * h, 4.0)) / (2.0 * h);
    CHECK(std::fabs(slope) == doctest::Approx(0.54711).epsilon(0.03));

    // dgamma/dp (0, 4) = 0
    const double hp = 0.005;
    const double dgdp = (solve_gamma(hp, 4.3) - solve_gamma(hp, 3.7)) / 0.6;
    CHECK(std::fabs(dgdp) <= 0.01);

    CHECK_THROWS_AS(solve_gamma(0.4, 4.0), DomainError);
    CHECK_THROWS_AS(solve_gamma(0.1, 9.0), DomainError);
}

TEST_CASE("short branch trace") {
    const Branch br = trace_branch(0.12);
    CHECK(br.complete);
    REQUIRE(br.points.size() >= 4);
    CHECK(br.points.front().a == 0.0);
    CHECK(br.points.front().p == 4.0);
    // the slope samples are always visited
    bool has_h = false, has_2h = false;
    for (const auto& bp : br.points) {
        if (std::fabs(bp.a - 0.005) < 1e-12) has_h = true;
        if (std::fabs(bp.a - 0.01) < 1e-12) has_2h = true;
    }
    CHECK(has_h);
    CHECK(has_2h);
    CHECK(br.slope_at_zero == doctest::Approx(4.3768).epsilon(0.02));
    // a and p strictly increase along the branch; orthogonality holds
    for (std::size_t i = 0; i + 1 < br.points.size(); ++i) {
        CHECK(br.points[i + 1].a > br.points[i].a);
        CHECK(br.points[i + 1].p > br.points[i].p);
    }
    for (const auto& bp : br.points) {
        CHECK(std::fabs(bp.eta) <= 1e-8);
        CHECK(bp.gamma == doctest::Approx(2.0 / bp.p - 1.0).epsilon(1e-13));
    }
    // final point lands on a_max
    CHECK(br.points.back().a == doctest::Approx(0.12).epsilon(1e-12));
}

TEST_CASE("equivalence of the penalized and plain formulations on branch") {
    profile::Profile prof;
    const BranchPoint bp = solve_p(0.05, {}, nullptr, &prof);
    // the penalty term <Q', u> Q'' is bounded by |eta| sup|Q''|, negligible
    double qpp_max = 0.0;
    for (double x : prof.grid.x)
        qpp_max = std::max(qpp_max, std::fabs(soliton::q_deriv(bp.p, x, 2)));
    CHECK(std::fabs(bp.eta) * qpp_max <= 1e-7);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(solve_p(0.7), DomainError);
    CHECK_THROWS_AS(trace_branch(0.0), DomainError);
    CHECK_THROWS_AS(trace_branch(0.6), DomainError);
}
