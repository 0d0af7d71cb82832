#pragma once

#include "sskdv/grid.hpp"

#include <optional>
#include <vector>

namespace sskdv::profile {

/// Tail coefficients in the normalized, O(1) form:
///   c0, c1 carry a factor Hi_g(a^{-2/3}); d0 carries Gi_g(a^{-2/3});
///   d1 carries a^{2(1+g)/3}.
struct TailCoefficients {
    double c0 = 0.0;
    double c1 = 0.0;
    double d0 = 0.0;
    double d1 = 0.0;
};

struct SolverConfig {
    double newton_tol = 1e-10; // sup norm of the collocation residual
    int max_newton = 25;
    int grid_n = 2000;         // rounded up to a multiple of 4
    double right_bound = 80.0; // effective right end is min(right_bound, right_over_a/a)
    double right_over_a = 8.0; // right truncation depth in units of 1/a
    double beta = 4.0;         // sinh grading strength
    double xi_left = 8.0;      // left truncation depth in the Airy variable
    int max_line_search = 8;   // halvings on residual increase
};

struct Profile {
    double a = 0.0;
    double gamma = -0.5;
    double p = 4.0;
    Grid grid;
    std::vector<double> u;
    std::vector<double> u_x;
    TailCoefficients tails;
    double residual_sup = 0.0;
    double eta = 0.0; // <u, Q_p'>
    int newton_iters = 0;
};

/// Collocation grid used by the solver for these parameters.
Grid solver_grid(double a, const SolverConfig& config);

/// Pointwise residual of
///   a((1+g)u + x u_x) - u_xxx + u_x - (u^{p+1})_x + <Q_p', u> Q_p''
/// on the grid (4th-order stencils, quadrature inner product).
std::vector<double> residual(double a, double gamma, double p, const Grid& grid,
                             const std::vector<double>& u);

/// Newton solve with Hi-matched left boundary conditions and the polynomial
/// right tail closure. The initial guess defaults to Q_p plus the first-order
/// correction in a; pass a previous Profile to warm start (resampled).
Profile solve_profile(double a, double gamma, double p, const SolverConfig& config = {},
                      const Profile* initial_guess = nullptr);

/// Quadratures of the four tail integrals against the solved profile.
TailCoefficients tail_coefficients(const Profile& prof);

/// Self-similar coordinates: v(y) = a^{-2/(3p)} u(a^{-1/3} y - 1/a), resampled
/// on a uniform y grid (quintic interpolation).
struct SelfSimilarProfile {
    std::vector<double> y;
    std::vector<double> v;
};
SelfSimilarProfile to_selfsimilar(const Profile& prof, int n_out = 0);

/// E(u) = ∫ (1/2) u_x^2 - u^{p+2}/(p+2) dx, grid quadrature plus analytic
/// corrections for both truncated tails.
double energy(const Profile& prof);

} // namespace sskdv::profile
