#pragma once

#include "sskdv/profile.hpp"

#include <vector>

namespace sskdv::bifurcation {

/// One point (a, p(a)) on the self-similar branch, with diagnostics.
struct BranchPoint {
    double a = 0.0;
    double p = 4.0;
    double gamma = -0.5;
    double eta = 0.0;
    double energy = 0.0;
    double u0 = 0.0; // profile value at x = 0
    int newton_iters = 0;
};

struct StepPolicy {
    double initial = 0.01;
    double shrink = 0.5;
    double grow = 1.3;
    double cap_low = 0.05;   // for a < 0.3
    double cap_high = 0.01;  // beyond
    double min_step = 1e-4;
    int fast_iters = 4;      // grow when the corrector was this cheap
    int slow_iters = 8;      // shrink the next step beyond this
};

struct Branch {
    std::vector<BranchPoint> points;
    double slope_at_zero = 0.0;
    profile::SolverConfig config;
    bool complete = true; // false when the trace stopped early
};

/// eta(a, g, p) = <u_{a,g,p}, Q_p'>. Optionally warm starts from and/or
/// returns the solved profile.
double eta(double a, double gamma, double p, const profile::SolverConfig& config = {},
           const profile::Profile* warm = nullptr, profile::Profile* out = nullptr);

/// Root of eta(a, 2/p - 1, p) in p by a secant iteration; a = 0 reduces to
/// the soliton with p = 4.
BranchPoint solve_p(double a, const profile::SolverConfig& config = {},
                    const profile::Profile* warm = nullptr, profile::Profile* out = nullptr,
                    double p_hint = 0.0);

/// Root of eta(a, g, p) in g at fixed p; gamma(0, p) = -1/2.
double solve_gamma(double a, double p, const profile::SolverConfig& config = {});

/// Predictor-corrector sweep of the branch up to a_max.
Branch trace_branch(double a_max, const StepPolicy& policy = {},
                    const profile::SolverConfig& config = {});

/// dp/da at a = 0: Gamma closed form and the soliton-quadrature ratio.
struct SlopeAtZero {
    double closed_form = 0.0;
    double quadrature_ratio = 0.0;
};
SlopeAtZero analytic_slope();

} // namespace sskdv::bifurcation
