#pragma once

#include "sskdv/scaled.hpp"

#include <utility>

namespace sskdv::specfun {

/// The one-parameter families generalizing the Airy function Ai and the
/// Scorer functions Gi, Hi. All three solve (1+g) f + x f' - f''' = 0.
enum class FamilyTag { AiGamma, GiGamma, HiGamma };

enum class Method { quadrature, asymptotic_series, zero_formula };

/// Evaluation result. est_abs_err bounds the error of the scaled mantissa,
/// i.e. |error| / exp(value.log_mag); for moderately sized values this is the
/// relative error.
struct EvalReport {
    ScaledValue value;
    Method method = Method::quadrature;
    double est_abs_err = 0.0;
};

/// Quadrature/series handoff points.
inline constexpr double kSwitchAiGi = 14.0;
inline constexpr double kSwitchHi = 20.0;

double x_switch(FamilyTag family);

/// Evaluate Ai_g, Gi_g or Hi_g at x. gamma must lie in (-1, 2.5).
/// Below the switch point the defining integral is evaluated on a deformed
/// contour; beyond it the asymptotic series takes over.
EvalReport eval(FamilyTag family, double gamma, double x);

/// Convenience: eval(...).value.to_real(). Overflows to +/-inf for huge Hi.
double eval_real(FamilyTag family, double gamma, double x);

/// Force the integral-representation path regardless of |x|. Exposed so the
/// quadrature/series handoff can be validated around the switch points.
EvalReport eval_quadrature(FamilyTag family, double gamma, double x);

/// Closed-form value at x = 0.
double value_at_zero(FamilyTag family, double gamma);

/// Determinant of the fundamental matrix (rows f, f', f'') at x.
/// Constant in x, equal to Gamma(1+g)/pi^2.
double wronskian(double gamma, double x);

/// Cross product [f,g] = f g' - f' g of two family members at the same gamma.
double cross_product(std::pair<FamilyTag, FamilyTag> pair, double gamma, double x);

/// Truncated asymptotic expansion with 1 <= n_terms <= 8 terms; only valid
/// for |x| >= x_switch(family). est_abs_err is the first omitted term.
EvalReport asymptotic(FamilyTag family, double gamma, double x, int n_terms);

} // namespace sskdv::specfun
