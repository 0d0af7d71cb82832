#include "sskdv/bifurcation.hpp"

#include "sskdv/errors.hpp"
#include "sskdv/errors.hpp"
#include "sskdv/gamma_fn.hpp"
#include "sskdv/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sskdv::bifurcation {

namespace {

using std::numbers::pi;

double eta_tolerance(double p, const profile::Profile& prof) {
    // 1e-9 relative to the natural scale ||Q_p'||_2 ||u||_2.
    const auto rep = soliton::soliton_report(p);
    double u2 = 0.0;
    for (std::size_t i = 0; i < prof.u.size(); ++i)
        u2 += prof.grid.quad_w[i] * prof.u[i] * prof.u[i];
    return 1e-9 * std::sqrt(rep.lx2_sq) * std::sqrt(std::max(u2, 0.0));
}

BranchPoint make_point(double a, double p, const profile::Profile& prof) {
    BranchPoint bp;
    bp.a = a;
    bp.p = p;
    bp.gamma = prof.gamma;
    bp.eta = prof.eta;
    bp.energy = profile::energy(prof);
    const std::size_t mid = prof.grid.size() / 2; // node placed exactly at 0
    bp.u0 = prof.u[mid];
    bp.newton_iters = prof.newton_iters;
    return bp;
}

} // namespace

double eta(double a, double gamma, double p, const profile::SolverConfig& config,
           const profile::Profile* warm, profile::Profile* out) {
    profile::Profile prof;
    try {
        prof = profile::solve_profile(a, gamma, p, config, warm);
    } catch (const NewtonDivergence&) {
        if (!warm) throw;
        // stale warm start; fall back to the cold path with its own
        // internal continuation
        prof = profile::solve_profile(a, gamma, p, config, nullptr);
    }
    const double value = prof.eta;
    if (out) *out = std::move(prof);
    return value;
}

BranchPoint solve_p(double a, const profile::SolverConfig& config,
                    const profile::Profile* warm, profile::Profile* out, double p_hint) {
    if (!(a >= 0.0 && a < 0.6)) throw DomainError("bifurcation: a must lie in [0, 0.6)");
    if (a == 0.0) {
        // eta(0, g, p) vanishes identically; the limit g(0, 2/p-1, p) of
        // eta/a is (2/p - 1/2) ||Q||^2 / ||Q_x||^2, whose root is exactly 4.
        profile::Profile prof = profile::solve_profile(0.0, -0.5, 4.0, config, warm);
        BranchPoint bp = make_point(0.0, 4.0, prof);
        bp.gamma = -0.5;
        if (out) *out = std::move(prof);
        return bp;
    }

    // the linear predictor only holds near a = 0; colder, larger a goes
    // through an internal continuation ladder
    if (p_hint <= 0.0 && !warm && a > 0.15) {
        profile::Profile stage;
        BranchPoint prev_bp = solve_p(0.75 * a, config, nullptr, &stage);
        const double extrapolated = prev_bp.p * (1.0 + 0.25 * a * 4.5 / prev_bp.p);
        return solve_p(a, config, &stage, out,
                       std::max(prev_bp.p, extrapolated));
    }
    const SlopeAtZero slope = analytic_slope();
    double p0 = p_hint > 0.0 ? p_hint : 4.0 + slope.closed_form * a;
    double p1 = p0 * 1.002;

    profile::Profile prof0, prof1;
    double f0 = eta(a, 2.0 / p0 - 1.0, p0, config, warm, &prof0);
    double f1 = eta(a, 2.0 / p1 - 1.0, p1, config, &prof0, &prof1);
    double tol = eta_tolerance(p1, prof1);

    // secant with a bracket guard once a sign change appears
    double blo = 0.0, bhi = 0.0, flo = 0.0;
    bool have_bracket = false;
    auto note_bracket = [&](double pa, double fa, double pb, double fb) {
        if (fa * fb < 0.0) {
            blo = pa;
            flo = fa;
            bhi = pb;
            have_bracket = true;
        }
    };
    note_bracket(p0, f0, p1, f1);

    for (int it = 0; it < 60; ++it) {
        const bool bracket_tight = have_bracket && std::fabs(bhi - blo) <= 1e-9 * std::max(1.0, p1);
        const bool step_tight = std::fabs(p1 - p0) <= 1e-10 * std::max(1.0, p1);
        if (std::fabs(f1) <= tol || bracket_tight || step_tight) {
            BranchPoint bp = make_point(a, p1, prof1);
            if (out) *out = std::move(prof1);
            return bp;
        }
        double p2;
        if (f1 != f0 && std::isfinite(f1) && std::isfinite(f0)) {
            p2 = p1 - f1 * (p1 - p0) / (f1 - f0);
        } else {
            p2 = 0.5 * (p0 + p1);
        }
        if (have_bracket && !(p2 > std::min(blo, bhi) && p2 < std::max(blo, bhi)))
            p2 = 0.5 * (blo + bhi);
        p2 = std::clamp(p2, 2.0, 200.0);

        profile::Profile prof2;
        const double f2 = eta(a, 2.0 / p2 - 1.0, p2, config, &prof1, &prof2);
        note_bracket(p1, f1, p2, f2);
        if (have_bracket) {
            if (flo * f2 < 0.0)
                bhi = p2;
            else {
                blo = p2;
                flo = f2;
            }
        }
        p0 = p1;
        f0 = f1;
        p1 = p2;
        f1 = f2;
        prof0 = std::move(prof1);
        prof1 = std::move(prof2);
        tol = eta_tolerance(p1, prof1);
    }
    throw RootBracketError("bifurcation: secant on p failed to converge at a = " +
                           std::to_string(a));
}

double solve_gamma(double a, double p, const profile::SolverConfig& config) {
    if (!(a >= 0.0 && a <= 0.3)) throw DomainError("bifurcation: solve_gamma needs a in [0, 0.3]");
    if (!(p >= 3.0 && p <= 8.0)) throw DomainError("bifurcation: solve_gamma needs p in [3, 8]");
    if (a == 0.0) {
        // lim eta/a = (g + 1/2) ||Q||^2/||Q_x||^2 vanishes at g = -1/2 for all p.
        return -0.5;
    }
    double g0 = -0.5 - 0.55 * a;
    double g1 = g0 - std::max(0.01, 0.2 * a);

    profile::Profile prof0, prof1;
    double f0 = eta(a, g0, p, config, nullptr, &prof0);
    double f1 = eta(a, g1, p, config, &prof0, &prof1);
    double tol = eta_tolerance(p, prof1);
    for (int it = 0; it < 60; ++it) {
        if (std::fabs(f1) <= tol) return g1;
        if (f1 == f0) throw RootBracketError("bifurcation: flat secant in gamma");
        double g2 = g1 - f1 * (g1 - g0) / (f1 - f0);
        g2 = std::clamp(g2, -0.95, -0.05);
        profile::Profile prof2;
        const double f2 = eta(a, g2, p, config, &prof1, &prof2);
        g0 = g1;
        f0 = f1;
        g1 = g2;
        f1 = f2;
        prof1 = std::move(prof2);
        tol = eta_tolerance(p, prof1);
    }
    throw RootBracketError("bifurcation: secant on gamma failed at a = " + std::to_string(a));
}

Branch trace_branch(double a_max, const StepPolicy& policy, const profile::SolverConfig& config) {
    if (!(a_max > 0.0 && a_max <= 0.55))
        throw DomainError("bifurcation: a_max must lie in (0, 0.55]");
    Branch branch;
    branch.config = config;

    profile::Profile last_prof;
    branch.points.push_back(solve_p(0.0, config, nullptr, &last_prof));

    // the slope sample points a = h, 2h are always visited first
    const double h = 0.005;
    std::vector<double> forced;
    if (a_max > 2.0 * h) forced = {h, 2.0 * h};

    double a = 0.0;
    double step = policy.initial;
    int failures = 0;
    while (a < a_max - 1e-12) {
        double a_next;
        if (!forced.empty()) {
            a_next = forced.front();
        } else {
            const double cap = a < 0.3 ? policy.cap_low : policy.cap_high;
            step = std::min(step, cap);
            a_next = std::min(a + step, a_max);
        }

        // predictor for p
        const auto& pts = branch.points;
        double p_pred;
        if (pts.size() >= 2) {
            const auto& q1 = pts[pts.size() - 2];
            const auto& q2 = pts.back();
            const double slope = (q2.p - q1.p) / (q2.a - q1.a);
            p_pred = q2.p + slope * (a_next - q2.a);
        } else {
            p_pred = 4.0 + analytic_slope().closed_form * a_next;
        }

        try {
            profile::Profile prof;
            BranchPoint bp = solve_p(a_next, config, &last_prof, &prof, p_pred);
            const double dp_rel = std::fabs(bp.p - pts.back().p) / pts.back().p;
            branch.points.push_back(bp);
            last_prof = std::move(prof);
            if (!forced.empty()) {
                forced.erase(forced.begin());
            } else {
                if (bp.newton_iters > policy.slow_iters || dp_rel > 0.2)
                    step *= policy.shrink;
                else if (bp.newton_iters <= policy.fast_iters)
                    step *= policy.grow;
            }
            a = a_next;
            failures = 0;
        } catch (const std::runtime_error&) {
            if (!forced.empty())
                forced.erase(forced.begin()); // skip an unreachable forced point
            step *= policy.shrink;
            if (++failures > 12 || step < policy.min_step) {
                branch.complete = false; // partial branch; last good point kept
                break;
            }
        }
    }

    // 3-point one-sided slope at a = 0 from the forced samples
    auto find_p = [&](double at) -> double {
        for (const auto& bp : branch.points)
            if (std::fabs(bp.a - at) < 1e-9) return bp.p;
        return std::nan("");
    };
    const double ph = find_p(h), p2h = find_p(2.0 * h);
    if (std::isfinite(ph) && std::isfinite(p2h))
        branch.slope_at_zero =
            (-3.0 * branch.points.front().p + 4.0 * ph - p2h) / (2.0 * h);
    return branch;
}

SlopeAtZero analytic_slope() {
    SlopeAtZero s;
    const double g14 = gamma_fn(0.25);
    s.closed_form = g14 * g14 * g14 * g14 / (4.0 * pi * pi);
    s.quadrature_ratio = soliton::soliton_report(4.0).ratio;
    return s;
}

} // namespace sskdv::bifurcation
