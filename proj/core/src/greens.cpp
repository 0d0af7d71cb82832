#include "sskdv/greens.hpp"

#include "sskdv/errors.hpp"
#include "sskdv/quadrature.hpp"
#include "sskdv/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sskdv::greens {

namespace {

using std::numbers::pi;
using specfun::FamilyTag;

void require_params(const KernelParams& p, bool allow_zero_a) {
    if (!(p.a >= 0.0 && p.a <= 0.6) || (!allow_zero_a && p.a == 0.0))
        throw DomainError("greens: a must lie in " +
                          std::string(allow_zero_a ? "[0, 0.6]" : "(0, 0.6]"));
    if (!(p.gamma > -1.0 && p.gamma < 0.0))
        throw DomainError("greens: gamma must lie in (-1, 0)");
}

double xi(double a, double x) { return std::pow(a, -2.0 / 3.0) * (1.0 + a * x); }

ScaledValue sv(FamilyTag f, double gamma, double x) {
    return specfun::eval(f, gamma, x).value;
}

double finish(const ScaledValue& v, const char* what) {
    if (v.sign != 0 && v.log_mag > 700.0)
        throw OverflowError(std::string("greens: ") + what +
                            " exceeds the representable range even after log combination");
    return v.to_real();
}

} // namespace

double kernel_K0(double x, double y) { return 0.5 * std::exp(-std::fabs(x - y)); }

double kernel_K(const KernelParams& params, double x, double y) {
    require_params(params, false);
    const double g = params.gamma;
    const double zx = xi(params.a, x);
    const double zy = xi(params.a, y);
    const ScaledValue pref = ScaledValue::from_log(1, std::log(pi) - std::log(params.a) / 3.0);
    if (x <= y) {
        return finish(pref * sv(FamilyTag::AiGamma, -g, zy) * sv(FamilyTag::HiGamma, g, zx),
                      "kernel_K");
    }
    const double sg = std::sin(g * pi);
    const double cg = std::cos(g * pi);
    const ScaledValue ai_y = sv(FamilyTag::AiGamma, -g, zy);
    const ScaledValue gi_y = sv(FamilyTag::GiGamma, -g, zy);
    const ScaledValue hi_y = sv(FamilyTag::HiGamma, -g, zy);
    const ScaledValue ai_x = sv(FamilyTag::AiGamma, g, zx);
    const ScaledValue gi_x = sv(FamilyTag::GiGamma, g, zx);
    ScaledAccumulator acc;
    acc.add(hi_y * ai_x);
    acc.add(-sg * (gi_y * gi_x));
    acc.add(-sg * (ai_y * ai_x));
    acc.add(-cg * (ai_y * gi_x));
    acc.add(cg * (gi_y * ai_x));
    return finish(pref * acc.value(), "kernel_K");
}

double kernel_orig(double gamma, double x, double y) {
    if (!(gamma > -1.0 && gamma < 0.0))
        throw DomainError("greens: kernel_orig needs gamma in (-1, 0)");
    const double g = gamma;
    if (x < y) {
        const ScaledValue v = sv(FamilyTag::AiGamma, -1.0 - g, y) * sv(FamilyTag::HiGamma, g, x);
        return pi * finish(v, "kernel_orig");
    }
    const double sg = std::sin(g * pi);
    const double cg = std::cos(g * pi);
    ScaledAccumulator acc;
    acc.add(sv(FamilyTag::HiGamma, -1.0 - g, y) * sv(FamilyTag::AiGamma, g, x));
    acc.add(sg * (sv(FamilyTag::GiGamma, -1.0 - g, y) * sv(FamilyTag::GiGamma, g, x)));
    acc.add(sg * (sv(FamilyTag::AiGamma, -1.0 - g, y) * sv(FamilyTag::AiGamma, g, x)));
    acc.add(cg * (sv(FamilyTag::AiGamma, -1.0 - g, y) * sv(FamilyTag::GiGamma, g, x)));
    acc.add(-cg * (sv(FamilyTag::GiGamma, -1.0 - g, y) * sv(FamilyTag::AiGamma, g, x)));
    return -pi * finish(acc.value(), "kernel_orig");
}

double kernel_left(const KernelParams& params, double x, double y) {
    require_params(params, false);
    if (y >= x) return 0.0;
    const double g = params.gamma;
    const double zx = xi(params.a, x);
    const double zy = xi(params.a, y);
    const double sg = std::sin(g * pi);
    const double cg = std::cos(g * pi);
    ScaledAccumulator acc;
    acc.add(sv(FamilyTag::HiGamma, -1.0 - g, zy) * sv(FamilyTag::AiGamma, g, zx));
    acc.add(sv(FamilyTag::AiGamma, -1.0 - g, zy) * sv(FamilyTag::HiGamma, g, zx));
    acc.add(sg * (sv(FamilyTag::GiGamma, -1.0 - g, zy) * sv(FamilyTag::GiGamma, g, zx)));
    acc.add(sg * (sv(FamilyTag::AiGamma, -1.0 - g, zy) * sv(FamilyTag::AiGamma, g, zx)));
    acc.add(cg * (sv(FamilyTag::AiGamma, -1.0 - g, zy) * sv(FamilyTag::GiGamma, g, zx)));
    acc.add(-cg * (sv(FamilyTag::GiGamma, -1.0 - g, zy) * sv(FamilyTag::AiGamma, g, zx)));
    const ScaledValue pref =
        ScaledValue::from_log(1, std::log(pi) - 2.0 / 3.0 * std::log(params.a));
    return finish(pref * acc.value(), "kernel_left");
}

std::vector<double> apply_T(const KernelParams& params, const std::function<double(double)>& F,
                            double y_lo, double y_hi, const std::vector<double>& out_points,
                            double abs_tol) {
    require_params(params, true);
    if (!(y_lo < y_hi)) throw DomainError("greens: apply_T needs y_lo < y_hi");

    std::vector<double> out;
    out.reserve(out_points.size());
    const bool zero_a = params.a == 0.0;
    const double sg = std::sin(params.gamma * pi);
    const double cg = std::cos(params.gamma * pi);
    for (double x : out_points) {
        // Panel boundaries at the kernel kink and the regime breaks.
        std::vector<double> cuts{y_lo, y_hi};
        for (double c : {x, 0.0, zero_a ? y_lo : -1.0 / params.a}) {
            if (c > y_lo && c < y_hi) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        // x-side factors are constant for a fixed output point.
        ScaledValue hi_x, ai_x, gi_x, pref;
        if (!zero_a) {
            const double zx = xi(params.a, x);
            hi_x = sv(FamilyTag::HiGamma, params.gamma, zx);
            ai_x = sv(FamilyTag::AiGamma, params.gamma, zx);
            gi_x = sv(FamilyTag::GiGamma, params.gamma, zx);
            pref = ScaledValue::from_log(1, std::log(pi) - std::log(params.a) / 3.0);
        }
        auto kernel_at = [&](double y) {
            if (zero_a) return kernel_K0(x, y);
            const double zy = xi(params.a, y);
            if (x <= y)
                return finish(pref * sv(FamilyTag::AiGamma, -params.gamma, zy) * hi_x,
                              "apply_T");
            const ScaledValue ai_y = sv(FamilyTag::AiGamma, -params.gamma, zy);
            const ScaledValue gi_y = sv(FamilyTag::GiGamma, -params.gamma, zy);
            ScaledAccumulator acc;
            acc.add(sv(FamilyTag::HiGamma, -params.gamma, zy) * ai_x);
            acc.add(-sg * (gi_y * gi_x));
            acc.add(-sg * (ai_y * ai_x));
            acc.add(-cg * (ai_y * gi_x));
            acc.add(cg * (gi_y * ai_x));
            return finish(pref * acc.value(), "apply_T");
        };

        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            QuadResult qr;
            total += gk15_adaptive<double>([&](double y) { return kernel_at(y) * F(y); },
                                           cuts[i], cuts[i + 1], abs_tol, 1e-12, &qr);
            if (!qr.converged)
                throw ConvergenceError("greens: apply_T quadrature failed at x = " +
                                       std::to_string(x));
        }
        out.push_back(total);
    }
    return out;
}

std::vector<double> apply_T_grid(const KernelParams& params, const std::vector<double>& y,
                                 const std::vector<double>& F,
                                 const std::vector<double>& out_points, double abs_tol) {
    if (y.size() != F.size() || y.size() < 4)
        throw GridError("greens: apply_T_grid needs matching y/F with >= 4 nodes");
    // Natural cubic spline coefficients.
    const std::size_t n = y.size();
    std::vector<double> h(n - 1), alpha(n, 0.0), mu(n, 0.0), z(n, 0.0), c(n, 0.0), b(n - 1),
        d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = y[i + 1] - y[i];
    for (std::size_t i = 1; i + 1 < n; ++i)
        alpha[i] = 3.0 * ((F[i + 1] - F[i]) / h[i] - (F[i] - F[i - 1]) / h[i - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double l = 2.0 * (y[i + 1] - y[i - 1]) - h[i - 1] * mu[i - 1];
        mu[i] = h[i] / l;
        z[i] = (alpha[i] - h[i - 1] * z[i - 1]) / l;
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        c[j] = z[j] - mu[j] * c[j + 1];
        b[j] = (F[j + 1] - F[j]) / h[j] - h[j] * (c[j + 1] + 2.0 * c[j]) / 3.0;
        d[j] = (c[j + 1] - c[j]) / (3.0 * h[j]);
    }
    auto interp = [y, F, b, c, d](double t) {
        if (t <= y.front()) return F.front();
        if (t >= y.back()) return F.back();
        const std::size_t j =
            static_cast<std::size_t>(std::upper_bound(y.begin(), y.end(), t) - y.begin()) - 1;
        const double dx = t - y[j];
        return F[j] + dx * (b[j] + dx * (c[j] + dx * d[j]));
    };
    return apply_T(params, interp, y.front(), y.back(), out_points, abs_tol);
}

ScaledValue weight(const WeightSpec& spec, double x) {
    const double a = spec.a;
    const double g = spec.gamma;
    if (a == 0.0) {
        const double rate = spec.kind == WeightKind::outer ? 0.5 : 0.75;
        return ScaledValue::from_log(1, x < 0.0 ? rate * x : 0.0);
    }
    const double inv_a = spec.kind == WeightKind::outer ? 1.0 / (3.0 * a) : 1.0 / (2.0 * a);
    if (x <= -1.0 / a) {
        const double pw = spec.kind == WeightKind::outer ? -3.0 / 8.0 : -3.0 / 2.0;
        const double z = std::pow(a, -2.0 / 3.0) * std::fabs(1.0 + a * x);
        return ScaledValue::from_log(1, -inv_a + pw * std::log1p(z));
    }
    if (x <= 0.0) {
        return ScaledValue::from_log(1, inv_a * (std::pow(1.0 + a * x, 1.5) - 1.0));
    }
    return ScaledValue::from_log(
        1, spec.k * std::log1p(x) + (-1.0 - g - spec.k) * std::log1p(a * x));
}

double small_a_deviation(double a, double gamma,
                         const std::vector<std::pair<double, double>>& samples) {
    const KernelParams params{a, gamma};
    const double bound = 1.0 / std::sqrt(a);
    double worst = 0.0;
    for (const auto& [x, y] : samples) {
        if (std::fabs(x) > bound || std::fabs(y) > bound)
            throw DomainError("greens: small_a_deviation samples need |x|,|y| <= a^{-1/2}");
        double model = kernel_K0(x, y);
        if (x > y)
            model += a * std::pow(1.0 + a * x, -1.0 - gamma) * std::pow(1.0 + a * y, -1.0 + gamma);
        worst = std::max(worst, std::fabs(kernel_K(params, x, y) - model));
    }
    return worst;
}

} // namespace sskdv::greens
