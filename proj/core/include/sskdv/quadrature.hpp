#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace sskdv {

struct QuadResult {
    double err = 0.0;       // absolute error estimate
    bool converged = false;
    int evaluations = 0;
};

namespace detail {
// 15-point Kronrod nodes on [0,1] of |x| and the paired weights (QUADPACK dqk15).
extern const double kGK15Nodes[8];
extern const double kGK15WeightsK[8];
extern const double kGK15WeightsG[4];
} // namespace detail

/// Adaptive Gauss-Kronrod (7,15) quadrature on a finite interval.
/// Splits the worst panel until both tolerances are met or max_panels is hit.
/// Works for real and complex integrands.
template <class T, class F>
T gk15_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                QuadResult* out = nullptr, int max_panels = 4000) {
    struct Panel {
        double a, b, err;
        T val;
    };

    auto eval_panel = [&](double pa, double pb) {
        const double h = 0.5 * (pb - pa);
        const double c = 0.5 * (pa + pb);
        T ik = T{}, ig = T{};
        for (int j = 0; j < 8; ++j) {
            const double dx = h * detail::kGK15Nodes[j];
            T fv;
            if (j == 7) {
                fv = f(c);
                ik += detail::kGK15WeightsK[j] * fv;
                ig += detail::kGK15WeightsG[3] * fv;
            } else {
                const T f1 = f(c - dx);
                const T f2 = f(c + dx);
                ik += detail::kGK15WeightsK[j] * (f1 + f2);
                if (j % 2 == 1) ig += detail::kGK15WeightsG[j / 2] * (f1 + f2);
            }
        }
        ik *= h;
        ig *= h;
        return Panel{pa, pb, std::abs(ik - ig), ik};
    };

    std::vector<Panel> panels;
    panels.push_back(eval_panel(a, b));
    int evals = 15;

    auto total_err = [&] {
        double e = 0.0;
        for (const auto& p : panels) e += p.err;
        return e;
    };
    auto total_val = [&] {
        T v{};
        for (const auto& p : panels) v += p.val;
        return v;
    };

    while (static_cast<int>(panels.size()) < max_panels) {
        const double err = total_err();
        const T val = total_val();
        if (err <= abs_tol || err <= rel_tol * std::abs(val)) {
            if (out) *out = {err, true, evals};
            return val;
        }
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) { return x.err < y.err; });
        const Panel w = *worst;
        const double mid = 0.5 * (w.a + w.b);
        if (mid <= w.a || mid >= w.b) break; // interval exhausted at double precision
        *worst = eval_panel(w.a, mid);
        panels.push_back(eval_panel(mid, w.b));
        evals += 30;
    }
    if (out) *out = {total_err(), false, evals};
    return total_val();
}

/// Convenience wrappers with error reporting via QuadResult only.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12, QuadResult* out = nullptr);

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, double abs_tol = 1e-12, double rel_tol = 1e-12,
                                 QuadResult* out = nullptr);

} // namespace sskdv
