#include "sskdv/specfun.hpp"

#include "sskdv/errors.hpp"
#include "sskdv/gamma_fn.hpp"
#include "sskdv/quadrature.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace sskdv::specfun {

namespace {

using std::numbers::pi;
using complex = std::complex<double>;
constexpr complex kI{0.0, 1.0};

// Decay budget for truncating exponential integrands: exp(-45) ~ 3e-20.
constexpr double kDecay = 45.0;

// Switch from direct negative-x quadrature to the saddle-point contour.
constexpr double kNegSaddleSwitch = 10.0;

// Switch from the pi/6 ray to the dedicated shifted contour for Ai, x > 0,
// where the ray representation starts losing digits to cancellation.
constexpr double kAiPosContourSwitch = 2.0;

// Solve E(r) = target for increasing E with E(0) <= 0, by Newton with bisection guard.
template <class F, class dF>
double solve_increasing(F E, dF dE, double target, double r0) {
    double lo = 0.0, hi = r0;
    while (E(hi) < target) hi *= 2.0;
    double r = hi;
    for (int it = 0; it < 80; ++it) {
        const double f = E(r) - target;
        if (f > 0)
            hi = r;
        else
            lo = r;
        const double d = dE(r);
        double rn = r - f / d;
        if (!(rn > lo && rn < hi)) rn = 0.5 * (lo + hi);
        if (std::fabs(rn - r) < 1e-12 * (1.0 + std::fabs(r))) return rn;
        r = rn;
    }
    return r;
}

void require_domain(double gamma) {
    if (!(gamma > -1.0 && gamma < 2.5))
        throw DomainError("specfun: gamma must lie in (-1, 2.5), got " + std::to_string(gamma));
}

void require_quadrature(const QuadResult& q, const char* what) {
    if (!q.converged)
        throw ConvergenceError(std::string("specfun: quadrature for ") + what +
                               " did not reach its tolerance (err=" + std::to_string(q.err) + ")");
}

// ---------------------------------------------------------------------------
// Hi_g(x) = (1/pi) int_0^inf s^g exp(-s^3/3 + s x) ds, computed in log scale.
// ---------------------------------------------------------------------------

struct ScaledEval {
    ScaledValue value;
    double rel_err;
};

// Integrates s^g * exp(w(s)) over [lo, hi] where w <= 0, with the endpoint
// singularity s^g (g < 0) removed by the substitution s = tau^(1/(1+g)).
template <class W>
double power_weighted(double gamma, W w, double lo, double hi, double* err) {
    double total = 0.0, errsum = 0.0;
    QuadResult q;
    double mid = std::min(1.0, hi);
    if (gamma < 0.0 && lo == 0.0 && mid > lo) {
        const double e = 1.0 / (1.0 + gamma);
        const double tau_hi = std::pow(mid, 1.0 + gamma);
        total += e * gk15_adaptive<double>(
                         [&](double tau) { return std::exp(w(std::pow(tau, e))); }, 0.0, tau_hi,
                         1e-14, 3e-14, &q);
        require_quadrature(q, "Hi (endpoint)");
        errsum += q.err;
        lo = mid;
    }
    if (hi > lo) {
        total += gk15_adaptive<double>(
            [&](double s) { return std::pow(s, gamma) * std::exp(w(s)); }, lo, hi, 1e-14, 3e-14,
            &q);
        require_quadrature(q, "Hi");
        errsum += q.err;
    }
    if (err) *err = errsum;
    return total;
}

ScaledEval hi_quad(double gamma, double x) {
    double err = 0.0;
    if (x <= 0.0) {
        // Monotone decay from s = 0.
        auto E = [&](double s) { return s * s * s / 3.0 - x * s; };
        auto dE = [&](double s) { return s * s - x; };
        const double R = solve_increasing(E, dE, kDecay, std::cbrt(3.0 * kDecay));
        const double v = power_weighted(gamma, [&](double s) { return -E(s); }, 0.0, R, &err);
        const double val = v / pi;
        return {ScaledValue::from_real(val), val > 0 ? err / val : err};
    }
    // Laplace peak at s* = sqrt(x); factor out the maximum exp(2/3 x^{3/2}).
    const double sstar = std::sqrt(x);
    const double M = 2.0 / 3.0 * x * sstar;
    auto w = [&](double s) { return -s * s * s / 3.0 + s * x - M; };
    // Bounds where w = -kDecay on both sides of the peak.
    auto El = [&](double s) { return -w(s); };
    double lo = 0.0;
    if (El(0.0) > kDecay) {
        // Newton on the left flank (decreasing toward the peak).
        double s = sstar;
        for (int it = 0; it < 80; ++it) {
            const double f = El(s) - kDecay;
            const double d = -(x - s * s);
            double sn = s - f / d;
            if (!(sn > 0.0 && sn < sstar)) sn = 0.5 * s;
            if (std::fabs(sn - s) < 1e-13 * (1.0 + s)) break;
            s = sn;
        }
        lo = s;
    }
    auto Er = [&](double s) { return El(sstar + s); };
    auto dEr = [&](double s) { return (sstar + s) * (sstar + s) - x; };
    const double hi = sstar + solve_increasing(Er, dEr, kDecay, sstar + 1.0);
    const double I = power_weighted(gamma, w, lo, hi, &err);
    return {ScaledValue::from_log(I > 0 ? 1 : (I < 0 ? -1 : 0), M + std::log(std::fabs(I) / pi)),
            I != 0 ? err / std::fabs(I) : err};
}

// ---------------------------------------------------------------------------
// J(g, x) = int_0^inf s^g exp(i(s^3/3 + x s)) ds on deformed contours.
// Ai_g = Re(e^{-i g pi/2} J)/pi, Gi_g = Im(e^{-i g pi/2} J)/pi.
// ---------------------------------------------------------------------------

// Complex analogue of power_weighted for contour segments starting at 0.
template <class G>
complex power_weighted_c(double gamma, G g, double lo, double hi, double* err) {
    complex total{};
    double errsum = 0.0;
    QuadResult q;
    double mid = std::min(1.0, hi);
    if (gamma < 0.0 && lo == 0.0 && mid > lo) {
        const double e = 1.0 / (1.0 + gamma);
        const double tau_hi = std::pow(mid, 1.0 + gamma);
        total += e * gk15_adaptive<complex>([&](double tau) { return g(std::pow(tau, e)); }, 0.0,
                                            tau_hi, 1e-14, 3e-14, &q);
        require_quadrature(q, "J (endpoint)");
        errsum += q.err;
        lo = mid;
    }
    if (hi > lo) {
        total += gk15_adaptive<complex>(
            [&](double s) { return std::pow(s, gamma) * g(s); }, lo, hi, 1e-14, 3e-14, &q);
        require_quadrature(q, "J");
        errsum += q.err;
    }
    if (err) *err = errsum;
    return total;
}

// x >= 0: rotate (0, inf) onto the ray arg s = pi/6.
complex j_ray(double gamma, double x, double* err) {
    const complex q = std::exp(kI * (pi / 6.0));
    auto E = [&](double r) { return r * r * r / 3.0 + 0.5 * x * r; };
    auto dE = [&](double r) { return r * r + 0.5 * x; };
    const double R = solve_increasing(E, dE, kDecay, std::cbrt(3.0 * kDecay));
    auto g = [&](double r) {
        return std::exp(complex(-E(r), 0.5 * std::sqrt(3.0) * x * r));
    };
    const complex I = power_weighted_c(gamma, g, 0.0, R, err);
    return std::pow(q, gamma + 1.0) * I;
}

// x < 0, moderate |x|: real axis past the stationary point, then rotate the
// tail onto arg(s - R) = pi/6 where the phase grows monotonically.
complex j_neg_direct(double gamma, double x, double* err) {
    const double s0 = std::sqrt(-x);
    const double R = 2.0 * s0 + 1.0;
    double e1 = 0.0, e2 = 0.0;
    auto g_main = [&](double s) {
        return std::exp(kI * (s * s * s / 3.0 + x * s));
    };
    const complex I_main = power_weighted_c(gamma, g_main, 0.0, R, &e1);

    const complex q = std::exp(kI * (pi / 6.0));
    auto im_phase = [&](double r) {
        return r * (0.5 * (R * R + x)) + 0.5 * std::sqrt(3.0) * R * r * r + r * r * r / 3.0;
    };
    auto d_im_phase = [&](double r) {
        return 0.5 * (R * R + x) + std::sqrt(3.0) * R * r + r * r;
    };
    const double rmax = solve_increasing(im_phase, d_im_phase, kDecay, 1.0);
    QuadResult qr;
    const complex I_tail =
        q * gk15_adaptive<complex>(
                [&](double r) {
                    const complex s = R + q * r;
                    return std::pow(s, complex(gamma)) * std::exp(kI * (s * s * s / 3.0 + x * s));
                },
                0.0, rmax, 1e-14, 3e-14, &qr);
    require_quadrature(qr, "J (rotated tail)");
    e2 = qr.err;
    if (err) *err = e1 + e2;
    return I_main + I_tail;
}

// x < -kNegSaddleSwitch: endpoint piece (0 -> -i inf), which is a Hi
// evaluation, plus the steepest-descent line through the saddle s0.
complex j_neg_saddle(double gamma, double x, double* err) {
    const double s0 = std::sqrt(-x);
    ScaledEval hi = hi_quad(gamma, x);
    const complex endpoint =
        -kI * std::exp(-kI * (0.5 * gamma * pi)) * pi * hi.value.to_real();

    const complex dir = std::exp(kI * (pi / 4.0));
    const double T = std::min(1.05 * std::sqrt(kDecay / s0), 1.2 * s0);
    const double phi0 = -2.0 / 3.0 * s0 * s0 * s0; // phase at the saddle
    QuadResult qr;
    const complex I =
        dir * gk15_adaptive<complex>(
                  [&](double t) {
                      const complex s = s0 + dir * t;
                      const complex iphi = kI * (s * s * s / 3.0 + x * s - phi0);
                      return std::pow(s, complex(gamma)) * std::exp(iphi);
                  },
                  -T, T, 1e-14, 3e-14, &qr);
    require_quadrature(qr, "J (saddle)");
    if (err) *err = qr.err + hi.rel_err * std::abs(endpoint);
    return endpoint + std::exp(kI * phi0) * I;
}

complex j_value(double gamma, double x, double* err) {
    if (x >= 0.0) return j_ray(gamma, x, err);
    if (x >= -kNegSaddleSwitch) return j_neg_direct(gamma, x, err);
    return j_neg_saddle(gamma, x, err);
}

// Dedicated contour for Ai_g, x > 0: shift to R + i sqrt(x), where the
// integrand carries the factor exp(-2/3 x^{3/2}) uniformly.
ScaledEval ai_pos_contour(double gamma, double x) {
    const double sx = std::sqrt(x);
    const double M = 2.0 / 3.0 * x * sx;
    const double T = std::sqrt(kDecay / sx);
    QuadResult qr;
    const complex I = gk15_adaptive<complex>(
        [&](double t) {
            const complex base(sx, -t); // (t + i sqrt(x)) / i
            return std::pow(base, complex(gamma)) *
                   std::exp(complex(-sx * t * t, t * t * t / 3.0));
        },
        -T, T, 1e-14, 3e-14, &qr);
    require_quadrature(qr, "Ai (shifted contour)");
    const double re = I.real() / (2.0 * pi);
    return {ScaledValue::from_log(re > 0 ? 1 : (re < 0 ? -1 : 0), -M + std::log(std::fabs(re))),
            re != 0 ? qr.err / std::fabs(re) : qr.err};
}

// ---------------------------------------------------------------------------
// Asymptotic series.
// ---------------------------------------------------------------------------

// Gaussian moments int u^q e^{-u^2} du / sqrt(pi): (q-1)!!/2^{q/2} for even q.
double gauss_moment(int q) {
    if (q % 2 == 1) return 0.0;
    double m = 1.0;
    for (int k = q - 1; k >= 1; k -= 2) m *= 0.5 * k;
    return m;
}

// Coefficients w_j of the saddle expansion
//   int (1 + c u eps)^g e^{-u^2} exp(d u^3 eps / 3) du
//     = sqrt(pi) * sum_j w_j eps^{2j},
// which covers Ai (x>0: c=-i, d=i), Hi (x>0: c=1, d=-1) and the oscillatory
// saddle at x<0 (c=e^{i pi/4}, d=e^{i 5 pi/4}).
std::array<complex, 9> expansion_coeffs(double gamma, complex c, complex d, int jmax) {
    std::array<complex, 9> w{};
    for (int j = 0; j <= jmax; ++j) {
        const int k = 2 * j;
        complex sum{};
        for (int m = 0; m <= k; ++m) {
            const int n = k - m;
            // binom(gamma, m)
            double binom = 1.0;
            for (int i = 0; i < m; ++i) binom *= (gamma - i) / (i + 1);
            double nfact = 1.0;
            for (int i = 2; i <= n; ++i) nfact *= i;
            sum += binom * std::pow(c, m) * std::pow(d / 3.0, n) / nfact *
                   gauss_moment(m + 3 * n);
        }
        w[j] = sum;
    }
    return w;
}

struct SeriesEval {
    ScaledValue value;
    double omitted; // first omitted term relative to the scaled magnitude
};

// Series with scaled prefactor exp(log_lead): value = lead * sum_j t_j.
SeriesEval scaled_series(double log_lead, const double* terms, int n) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += terms[j];
    const int sgn = sum > 0 ? 1 : (sum < 0 ? -1 : 0);
    return {ScaledValue::from_log(sgn, log_lead + std::log(std::fabs(sum))),
            std::exp(log_lead)}; // caller overwrites omitted
}

// Hi, x -> -inf and Gi smooth part: sum_j q_j Gamma(1+g+3j)/(3^j j! pi) |x|^{-1-g-3j}.
double hi_neg_terms(double gamma, double ax, double* t, int n, double sign3) {
    // sign3 = -1/3 ratio sign for Gi (x>0), +1/3 for Hi/Gi (x<0 smooth magnitude)
    double next = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double term = std::pow(sign3, j) / std::tgamma(j + 1.0) *
                            std::exp(log_gamma(1.0 + gamma + 3.0 * j) -
                                     (1.0 + gamma + 3.0 * j) * std::log(ax)) /
                            pi;
        if (j < n)
            t[j] = term;
        else
            next = std::fabs(term);
    }
    return next;
}

EvalReport asym_hi(double gamma, double x, int n) {
    if (x > 0) {
        const auto w = expansion_coeffs(gamma, complex(1.0), complex(-1.0), n);
        const double log_lead = 2.0 / 3.0 * std::pow(x, 1.5) +
                                (0.5 * gamma - 0.25) * std::log(x) - 0.5 * std::log(pi);
        double t[9];
        const double eps2 = std::pow(x, -1.5);
        for (int j = 0; j < n; ++j) t[j] = w[j].real() * std::pow(eps2, j);
        auto se = scaled_series(log_lead, t, n);
        const double omit = std::fabs(w[n].real()) * std::pow(eps2, n);
        return {se.value, Method::asymptotic_series, omit};
    }
    double t[9];
    const double next = hi_neg_terms(gamma, -x, t, n, -1.0 / 3.0);
    auto se = scaled_series(0.0, t, n);
    return {se.value, Method::asymptotic_series, next};
}

EvalReport asym_ai(double gamma, double x, int n) {
    if (x > 0) {
        const auto w = expansion_coeffs(gamma, -kI, kI, n);
        const double log_lead = -2.0 / 3.0 * std::pow(x, 1.5) +
                                (0.5 * gamma - 0.25) * std::log(x) -
                                std::log(2.0 * std::sqrt(pi));
        double t[9];
        const double eps2 = std::pow(x, -1.5);
        for (int j = 0; j < n; ++j) t[j] = w[j].real() * std::pow(eps2, j);
        auto se = scaled_series(log_lead, t, n);
        return {se.value, Method::asymptotic_series, std::fabs(w[n].real()) * std::pow(eps2, n)};
    }
    // Oscillatory saddle part plus the smooth part -sin(pi g) Hi_g(x).
    const double ax = -x;
    const auto w = expansion_coeffs(gamma, std::exp(kI * (pi / 4.0)),
                                    std::exp(kI * (5.0 * pi / 4.0)), n);
    const double eps2 = std::pow(ax, -1.5);
    complex S{};
    for (int j = 0; j < n; ++j) S += w[j] * std::pow(eps2, j);
    const double theta = 2.0 / 3.0 * std::pow(ax, 1.5);
    const complex ph = std::exp(kI * (pi / 4.0 - 0.5 * gamma * pi - theta));
    const double osc = std::pow(ax, 0.5 * gamma - 0.25) / std::sqrt(pi) * (ph * S).real();

    double t[9];
    const double next_smooth = hi_neg_terms(gamma, ax, t, n, -1.0 / 3.0);
    double hi_sum = 0.0;
    for (int j = 0; j < n; ++j) hi_sum += t[j];
    const double smooth = -std::sin(gamma * pi) * hi_sum;

    const double omitted = std::pow(ax, 0.5 * gamma - 0.25) / std::sqrt(pi) *
                               std::abs(w[n]) * std::pow(eps2, n) +
                           std::fabs(std::sin(gamma * pi)) * next_smooth;
    return {ScaledValue::from_real(osc + smooth), Method::asymptotic_series, omitted};
}

EvalReport asym_gi(double gamma, double x, int n) {
    if (x > 0) {
        double t[9];
        const double next = hi_neg_terms(gamma, x, t, n, 1.0 / 3.0);
        auto se = scaled_series(0.0, t, n);
        return {se.value, Method::asymptotic_series, next};
    }
    const double ax = -x;
    const auto w = expansion_coeffs(gamma, std::exp(kI * (pi / 4.0)),
                                    std::exp(kI * (5.0 * pi / 4.0)), n);
    const double eps2 = std::pow(ax, -1.5);
    complex S{};
    for (int j = 0; j < n; ++j) S += w[j] * std::pow(eps2, j);
    const double theta = 2.0 / 3.0 * std::pow(ax, 1.5);
    const complex ph = std::exp(kI * (pi / 4.0 - 0.5 * gamma * pi - theta));
    const double osc = std::pow(ax, 0.5 * gamma - 0.25) / std::sqrt(pi) * (ph * S).imag();

    double t[9];
    const double next_smooth = hi_neg_terms(gamma, ax, t, n, -1.0 / 3.0);
    double hi_sum = 0.0;
    for (int j = 0; j < n; ++j) hi_sum += t[j];
    const double smooth = -std::cos(gamma * pi) * hi_sum;

    const double omitted = std::pow(ax, 0.5 * gamma - 0.25) / std::sqrt(pi) *
                               std::abs(w[n]) * std::pow(eps2, n) +
                           std::fabs(std::cos(gamma * pi)) * next_smooth;
    return {ScaledValue::from_real(osc + smooth), Method::asymptotic_series, omitted};
}

EvalReport asym_dispatch(FamilyTag family, double gamma, double x, int n) {
    switch (family) {
        case FamilyTag::AiGamma: return asym_ai(gamma, x, n);
        case FamilyTag::GiGamma: return asym_gi(gamma, x, n);
        case FamilyTag::HiGamma: return asym_hi(gamma, x, n);
    }
    throw DomainError("specfun: bad family tag");
}

EvalReport zero_report(FamilyTag family, double gamma) {
    const double v = value_at_zero(family, gamma);
    EvalReport r;
    r.value = ScaledValue::from_real(v);
    r.method = Method::zero_formula;
    r.est_abs_err = 4e-15 * std::fabs(v);
    return r;
}

} // namespace

double x_switch(FamilyTag family) {
    return family == FamilyTag::HiGamma ? kSwitchHi : kSwitchAiGi;
}

double value_at_zero(FamilyTag family, double gamma) {
    if (!(gamma > -1.0))
        throw DomainError("specfun: value_at_zero needs gamma > -1 (Gamma pole)");
    require_domain(gamma);
    const double common = std::pow(3.0, (gamma - 2.0) / 3.0) * gamma_fn((gamma + 1.0) / 3.0) / pi;
    switch (family) {
        case FamilyTag::AiGamma: return -std::sin(pi * (gamma - 2.0) / 3.0) * common;
        case FamilyTag::GiGamma: return -std::cos(pi * (gamma - 2.0) / 3.0) * common;
        case FamilyTag::HiGamma: return common;
    }
    throw DomainError("specfun: bad family tag");
}

EvalReport eval_quadrature(FamilyTag family, double gamma, double x) {
    require_domain(gamma);
    if (!std::isfinite(x)) throw DomainError("specfun: x must be finite");
    if (x == 0.0) return zero_report(family, gamma);

    EvalReport r;
    r.method = Method::quadrature;
    if (family == FamilyTag::HiGamma) {
        auto h = hi_quad(gamma, x);
        r.value = h.value;
        r.est_abs_err = h.rel_err;
        return r;
    }
    if (family == FamilyTag::AiGamma && x > kAiPosContourSwitch) {
        auto a = ai_pos_contour(gamma, x);
        r.value = a.value;
        r.est_abs_err = a.rel_err;
        return r;
    }
    double jerr = 0.0;
    const complex J = j_value(gamma, x, &jerr);
    const complex rot = std::exp(-kI * (0.5 * gamma * pi)) * J;
    const double v = (family == FamilyTag::AiGamma ? rot.real() : rot.imag()) / pi;
    r.value = ScaledValue::from_real(v);
    r.est_abs_err = v != 0.0 ? jerr / (pi * std::fabs(v)) : jerr;
    return r;
}

EvalReport eval(FamilyTag family, double gamma, double x) {
    require_domain(gamma);
    if (!std::isfinite(x)) throw DomainError("specfun: x must be finite");
    if (x == 0.0) return zero_report(family, gamma);

    const double xs = x_switch(family);
    if (std::fabs(x) > xs) {
        // Optimal truncation within the 8-term budget.
        EvalReport best = asym_dispatch(family, gamma, x, 1);
        for (int n = 2; n <= 8; ++n) {
            EvalReport r = asym_dispatch(family, gamma, x, n);
            if (r.est_abs_err < best.est_abs_err) best = r;
        }
        return best;
    }
    return eval_quadrature(family, gamma, x);
}

double eval_real(FamilyTag family, double gamma, double x) {
    return eval(family, gamma, x).value.to_real();
}

double wronskian(double gamma, double x) {
    if (!(gamma > -1.0 && gamma < 1.0))
        throw DomainError("specfun: wronskian needs gamma in (-1, 1)");
    if (std::fabs(x) > kSwitchAiGi)
        throw RangeError("specfun: wronskian needs |x| <= 12");
    // Rows f, f', f'' with f' = -Ai_{g+1}, -Gi_{g+1}, +Hi_{g+1}
    // and f'' = Ai_{g+2}, Gi_{g+2}, Hi_{g+2}.
    double m[3][3];
    for (int r = 0; r < 3; ++r) {
        const double g = gamma + r;
        m[r][0] = eval_real(FamilyTag::AiGamma, g, x);
        m[r][1] = eval_real(FamilyTag::GiGamma, g, x);
        m[r][2] = eval_real(FamilyTag::HiGamma, g, x);
    }
    m[1][0] = -m[1][0];
    m[1][1] = -m[1][1];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double cross_product(std::pair<FamilyTag, FamilyTag> pair, double gamma, double x) {
    auto value = [&](FamilyTag f) { return eval_real(f, gamma, x); };
    auto deriv = [&](FamilyTag f) {
        const double up = eval_real(f, gamma + 1.0, x);
        return f == FamilyTag::HiGamma ? up : -up;
    };
    return value(pair.first) * deriv(pair.second) - deriv(pair.first) * value(pair.second);
}

EvalReport asymptotic(FamilyTag family, double gamma, double x, int n_terms) {
    require_domain(gamma);
    if (n_terms < 1 || n_terms > 8)
        throw DomainError("specfun: n_terms must lie in [1, 8]");
    // Valid down to 2 below the switch point: that margin is exactly the
    // band where the handoff against quadrature is verified.
    if (std::fabs(x) < x_switch(family) - 2.0)
        throw RangeError("specfun: asymptotic series invalid for |x| < x_switch - 2");
    return asym_dispatch(family, gamma, x, n_terms);
}

} // namespace sskdv::specfun
