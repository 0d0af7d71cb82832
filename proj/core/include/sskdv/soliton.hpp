#pragma once

#include <vector>

namespace sskdv::soliton {

/// Norms, moments and energy of the soliton Q_p.
/// ratio = (integral of Q)^2 / (integral of Q^2).
struct SolitonReport {
    double p = 0.0;
    double l1 = 0.0;     // ∫ Q dx
    double l2_sq = 0.0;  // ∫ Q^2 dx
    double lx2_sq = 0.0; // ∫ Q_x^2 dx
    double lp2 = 0.0;    // ∫ Q^{p+2} dx
    double energy = 0.0; // ∫ 1/2 Q_x^2 - Q^{p+2}/(p+2) dx
    double ratio = 0.0;  // l1^2 / l2_sq
};

inline constexpr double kPMin = 2.0;
inline constexpr double kPMax = 200.0;

/// Q_p(x) = ((p+2)/2)^{1/p} sech^{2/p}(p x / 2); positive, even, ~e^{-|x|}.
double q(double p, double x);

/// Analytic first or second derivative of Q_p.
double q_deriv(double p, double x, int order);

/// (2/p) Q + x Q' — the scaling derivative of the traveling-wave family.
double q_tilde(double p, double x);

/// Norms by adaptive quadrature on (-X_Q, X_Q), tails below 1e-13.
SolitonReport soliton_report(double p);

/// m_k = ∫ x^k Q_p(x) dx; zero for odd k.
double moment(double p, int k);

/// Linearization L psi = -psi'' + psi - (p+1) Q^p psi applied on a uniform
/// grid (2nd-order central differences, psi compactly supported inside).
std::vector<double> apply_L(double p, const std::vector<double>& psi, double x0, double h);

} // namespace sskdv::soliton
