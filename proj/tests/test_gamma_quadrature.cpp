#include "doctest.h"

#include "sskdv/gamma_fn.hpp"
#include "sskdv/quadrature.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace sskdv;

TEST_CASE("gamma function against high-precision references") {
    // mpmath, 25 digits
    struct Ref { double z, g; };
    const Ref refs[] = {
        {0.25, 3.625609908221908311930685},
        {1.0 / 3.0, 2.678938534707747633654692},
        {0.5, 1.772453850905516027298167},
        {1.0 / 6.0, 5.566316001780235204250096},
        {1.25, 0.9064024770554770779827},
        {2.5, 1.329340388179137020473626},
        {4.75, 16.58620653922593961083},
        {17.5, 85634974475162.06387070},
    };
    for (const auto& r : refs)
        CHECK(std::fabs(gamma_fn(r.z) - r.g) <= 1e-14 * r.g);

    // reflection side
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(std::fabs(log_gamma(20.0) - std::lgamma(20.0)) <= 1e-13 * std::lgamma(20.0));
}

TEST_CASE("adaptive GK15 on smooth and oscillatory integrands") {
    QuadResult q;
    const double g = integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0,
                               1e-14, 1e-14, &q);
    CHECK(q.converged);
    CHECK(g == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));

    const double osc = integrate([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0,
                                 1e-14, 1e-14, &q);
    CHECK(q.converged);
    CHECK(osc == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-11));

    const auto c = integrate_c(
        [](double x) { return std::exp(std::complex<double>(0.0, 3.0 * x)); }, 0.0, 2.0, 1e-14,
        1e-14, &q);
    CHECK(q.converged);
    CHECK(c.real() == doctest::Approx(std::sin(6.0) / 3.0).epsilon(1e-12));
    CHECK(c.imag() == doctest::Approx((1.0 - std::cos(6.0)) / 3.0).epsilon(1e-12));
}
