#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace sskdv {

/// Nonuniform collocation grid with sinh grading (fine near x = 0) plus
/// per-node 7-point finite-difference stencils and 4th-order quadrature
/// weights obtained from composite Simpson in the grading coordinate.
struct Grid {
    std::vector<double> x;
    std::vector<double> quad_w;
    std::vector<int> stencil_start;              // first node of each 7-point stencil
    std::vector<std::array<double, 7>> d1, d2, d3;

    std::size_t size() const { return x.size(); }
    double left() const { return x.front(); }
    double right() const { return x.back(); }

    double deriv1(const std::vector<double>& u, std::size_t i) const;
    double deriv2(const std::vector<double>& u, std::size_t i) const;
    double deriv3(const std::vector<double>& u, std::size_t i) const;

    /// Quadrature of a nodal function against the grid weights.
    double integrate(const std::vector<double>& f) const;
};

/// Build a grid on [x_left, x_right] with x_left < 0 < x_right; n is rounded
/// up to a multiple of 4 and a node is placed exactly at 0. beta controls the
/// clustering strength near 0.
Grid make_graded_grid(double x_left, double x_right, int n, double beta);

/// Fornberg weights for derivatives 0..max_order of a function known at
/// nodes xs[0..nd), evaluated at z. C has (max_order+1) rows of nd entries,
/// row-major: C[order * nd + j].
void fd_weights(double z, const double* xs, int nd, int max_order, double* C);

} // namespace sskdv
