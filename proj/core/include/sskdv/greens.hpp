#pragma once

#include "sskdv/scaled.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace sskdv::greens {

/// Parameters of the transformed linear operator
///   a((1+g)u + x u_x) - u_xxx + u_x.
struct KernelParams {
    double a = 0.0;     // bifurcation parameter, in [0, 0.6]
    double gamma = 0.0; // exponent, in (-1, 0)
};

enum class WeightKind { outer, inner };

/// Selects one of the weight functions w^a (outer) or w_i^a (inner).
struct WeightSpec {
    double a = 0.0;
    double gamma = 0.0;
    int k = 0;
    WeightKind kind = WeightKind::outer;
};

/// Kernel of (1 - d_xx)^{-1}: the a -> 0 limit of K^a.
double kernel_K0(double x, double y);

/// Transformed kernel K^a(x, y): u(x) = ∫ K^a(x,y) F(y) dy inverts the
/// linear operator applied to d_x F. Assembled from scaled Ai/Gi/Hi products.
double kernel_K(const KernelParams& params, double x, double y);

/// Right-inverse kernel of (1+g)u + x u_x - u_xxx in original coordinates,
/// selected by decay on both sides.
double kernel_orig(double gamma, double x, double y);

/// Forward (left) kernel: supported on y < x, solves the homogeneous
/// equation in x with u(y) = u'(y) = 0, u''(y) = 1.
double kernel_left(const KernelParams& params, double x, double y);

/// u(x_i) = ∫ K^a(x_i, y) F(y) dy over [y_lo, y_hi], with quadrature panels
/// split at the kernel kink y = x and the regime boundaries y = 0, -1/a.
std::vector<double> apply_T(const KernelParams& params, const std::function<double(double)>& F,
                            double y_lo, double y_hi, const std::vector<double>& out_points,
                            double abs_tol = 1e-11);

/// Same, with F given on a grid (cubic-spline interpolated).
std::vector<double> apply_T_grid(const KernelParams& params, const std::vector<double>& y,
                                 const std::vector<double>& F,
                                 const std::vector<double>& out_points, double abs_tol = 1e-11);

/// Weight functions w^a / w_i^a (three branches) and their a = 0 limits.
ScaledValue weight(const WeightSpec& spec, double x);

/// max over samples of |K^a(x,y) - (K0(x,y) + a X_{x>y} (1+ax)^{-1-g} (1+ay)^{-1+g})|.
double small_a_deviation(double a, double gamma,
                         const std::vector<std::pair<double, double>>& samples);

} // namespace sskdv::greens
