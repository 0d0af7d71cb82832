#include "sskdv/grid.hpp"

#include "sskdv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace sskdv {

void fd_weights(double z, const double* xs, int nd, int max_order, double* C) {
    // Fornberg's recursion (Math. Comp. 51, 1988).
    const int m = max_order;
    std::memset(C, 0, sizeof(double) * (m + 1) * nd);
    auto at = [&](int order, int j) -> double& { return C[order * nd + j]; };
    double c1 = 1.0;
    double c4 = xs[0] - z;
    at(0, 0) = 1.0;
    for (int i = 1; i < nd; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    at(k, i) = c1 * (k * at(k - 1, i - 1) - c5 * at(k, i - 1)) / c2;
                at(0, i) = -c1 * c5 * at(0, i - 1) / c2;
            }
            for (int k = mn; k >= 1; --k) at(k, j) = (c4 * at(k, j) - k * at(k - 1, j)) / c3;
            at(0, j) = c4 * at(0, j) / c3;
        }
        c1 = c2;
    }
}

namespace {

double stencil_apply(const std::array<double, 7>& w, const std::vector<double>& u, int start) {
    double s = 0.0;
    for (int k = 0; k < 7; ++k) s += w[k] * u[start + k];
    return s;
}

} // namespace

double Grid::deriv1(const std::vector<double>& u, std::size_t i) const {
    return stencil_apply(d1[i], u, stencil_start[i]);
}
double Grid::deriv2(const std::vector<double>& u, std::size_t i) const {
    return stencil_apply(d2[i], u, stencil_start[i]);
}
double Grid::deriv3(const std::vector<double>& u, std::size_t i) const {
    return stencil_apply(d3[i], u, stencil_start[i]);
}

double Grid::integrate(const std::vector<double>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += quad_w[i] * f[i];
    return s;
}

Grid make_graded_grid(double x_left, double x_right, int n, double beta) {
    if (!(x_left < 0.0 && x_right > 0.0))
        throw GridError("grid: need x_left < 0 < x_right");
    if (n < 16) throw GridError("grid: need at least 16 intervals");
    n = ((n + 3) / 4) * 4;
    const int half = n / 2;

    Grid g;
    g.x.resize(n + 1);
    const double sb = std::sinh(beta);
    auto map_side = [&](double bound, double s) { return bound * std::sinh(beta * s) / sb; };
    for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i - half) / half;
        g.x[i] = s < 0.0 ? map_side(x_left, -s) : map_side(x_right, s);
    }
    g.x[half] = 0.0;

    // Simpson in s per side, times |dx/ds|.
    g.quad_w.assign(n + 1, 0.0);
    const double ds = 1.0 / half;
    auto jac = [&](double bound, double s) {
        return std::fabs(bound) * beta * std::cosh(beta * s) / sb;
    };
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i <= half; ++i) {
            const double s = static_cast<double>(i) / half;
            double w = (i == 0 || i == half) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            w *= ds / 3.0;
            const int node = side == 0 ? half - i : half + i;
            g.quad_w[node] += w * jac(side == 0 ? x_left : x_right, s);
        }
    }

    g.stencil_start.resize(n + 1);
    g.d1.resize(n + 1);
    g.d2.resize(n + 1);
    g.d3.resize(n + 1);
    double C[4 * 7];
    for (int i = 0; i <= n; ++i) {
        const int start = std::clamp(i - 3, 0, n - 6);
        g.stencil_start[i] = start;
        fd_weights(g.x[i], g.x.data() + start, 7, 3, C);
        for (int k = 0; k < 7; ++k) {
            g.d1[i][k] = C[1 * 7 + k];
            g.d2[i][k] = C[2 * 7 + k];
            g.d3[i][k] = C[3 * 7 + k];
        }
    }
    return g;
}

} // namespace sskdv
