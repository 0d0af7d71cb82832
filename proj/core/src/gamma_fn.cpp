#include "sskdv/gamma_fn.hpp"

#include <cmath>
#include <numbers>

namespace sskdv {

namespace {

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_sum(double z) {
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + i - 1.0);
    return s;
}

} // namespace

double gamma_fn(double z) {
    using std::numbers::pi;
    if (z < 0.5) {
        // Reflection; blows up at the poles z = 0, -1, -2, ... as it should.
        return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    }
    const double t = z + 6.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z - 0.5) * std::exp(-t) * lanczos_sum(z);
}

double log_gamma(double z) {
    using std::numbers::pi;
    if (z < 0.5) {
        return std::log(pi / std::fabs(std::sin(pi * z))) - log_gamma(1.0 - z);
    }
    const double t = z + 6.5;
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

} // namespace sskdv
