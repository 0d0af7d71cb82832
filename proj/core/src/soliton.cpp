#include "sskdv/soliton.hpp"

#include "sskdv/errors.hpp"
#include "sskdv/quadrature.hpp"

#include <cmath>
#include <string>

namespace sskdv::soliton {

namespace {

constexpr double kXQ = 40.0; // Q ~ e^{-|x|}, so tails beyond are < e^{-40}

void require_p(double p) {
    if (!(p >= kPMin && p <= kPMax))
        throw DomainError("soliton: p must lie in [2, 200], got " + std::to_string(p));
}

// log sech(z), stable for large |z|.
double log_sech(double z) {
    const double az = std::fabs(z);
    return -az + std::log(2.0) - std::log1p(std::exp(-2.0 * az));
}

void require_converged(const QuadResult& q, const char* what) {
    if (!q.converged)
        throw ConvergenceError(std::string("soliton: quadrature for ") + what + " failed");
}

} // namespace

double q(double p, double x) {
    require_p(p);
    const double lead = std::log((p + 2.0) / 2.0) / p;
    return std::exp(lead + (2.0 / p) * log_sech(0.5 * p * x));
}

double q_deriv(double p, double x, int order) {
    require_p(p);
    const double Q = q(p, x);
    if (order == 1) return -Q * std::tanh(0.5 * p * x);
    if (order == 2) return Q - std::exp((p + 1.0) * std::log(Q)); // from -Q'' + Q - Q^{p+1} = 0
    throw DomainError("soliton: derivative order must be 1 or 2");
}

double q_tilde(double p, double x) {
    return (2.0 / p) * q(p, x) + x * q_deriv(p, x, 1);
}

SolitonReport soliton_report(double p) {
    require_p(p);
    SolitonReport r;
    r.p = p;
    QuadResult qq;
    auto even_integral = [&](auto f, const char* what) {
        const double v =
            2.0 * integrate([&](double x) { return f(x); }, 0.0, kXQ, 1e-14, 5e-14, &qq);
        require_converged(qq, what);
        return v;
    };
    r.l1 = even_integral([&](double x) { return q(p, x); }, "l1");
    r.l2_sq = even_integral([&](double x) { const double v = q(p, x); return v * v; }, "l2");
    r.lx2_sq = even_integral(
        [&](double x) { const double v = q_deriv(p, x, 1); return v * v; }, "lx2");
    r.lp2 = even_integral(
        [&](double x) { return std::exp((p + 2.0) * std::log(q(p, x))); }, "lp2");
    r.energy = 0.5 * r.lx2_sq - r.lp2 / (p + 2.0);
    r.ratio = r.l1 * r.l1 / r.l2_sq;
    return r;
}

double moment(double p, int k) {
    require_p(p);
    if (k < 0 || k > 6) throw DomainError("soliton: moment order must lie in [0, 6]");
    if (k % 2 == 1) return 0.0;
    QuadResult qq;
    const double v = 2.0 * integrate(
                               [&](double x) { return std::pow(x, k) * q(p, x); }, 0.0, kXQ,
                               1e-14, 5e-14, &qq);
    require_converged(qq, "moment");
    return v;
}

std::vector<double> apply_L(double p, const std::vector<double>& psi, double x0, double h) {
    require_p(p);
    if (h > 0.05) throw GridError("soliton: apply_L needs grid spacing <= 0.05");
    if (psi.size() < 5) throw GridError("soliton: apply_L needs at least 5 nodes");
    const std::size_t n = psi.size();
    std::vector<double> out(n);
    // psi is compactly supported inside the grid, so off-grid values are 0.
    auto at = [&](std::ptrdiff_t i) {
        return (i >= 0 && i < static_cast<std::ptrdiff_t>(n)) ? psi[i] : 0.0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::ptrdiff_t>(i);
        const double d2 = (-at(j - 2) + 16.0 * at(j - 1) - 30.0 * psi[i] + 16.0 * at(j + 1) -
                           at(j + 2)) /
                          (12.0 * h * h);
        const double x = x0 + i * h;
        out[i] = -d2 + psi[i] - (p + 1.0) * std::pow(q(p, x), p) * psi[i];
    }
    return out;
}

} // namespace sskdv::soliton
