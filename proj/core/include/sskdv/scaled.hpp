#pragma once

#include <cmath>
#include <limits>

namespace sskdv {

/// A real number stored as (sign, log of magnitude) so that
/// super-exponentially large or small quantities stay representable.
/// Invariant: sign == 0 iff log_mag == -inf.
struct ScaledValue {
    int sign = 0;
    double log_mag = -std::numeric_limits<double>::infinity();

    static ScaledValue zero() { return {}; }

    static ScaledValue from_log(int sign, double log_mag) {
        if (sign == 0 || (std::isinf(log_mag) && log_mag < 0))
            return {};
        return {sign > 0 ? 1 : -1, log_mag};
    }

    static ScaledValue from_real(double v) {
        if (v == 0.0) return {};
        return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
    }

    double to_real() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    bool is_zero() const { return sign == 0; }

    ScaledValue operator-() const { return {-sign, log_mag}; }

    friend ScaledValue operator*(const ScaledValue& a, const ScaledValue& b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag + b.log_mag};
    }

    friend ScaledValue operator/(const ScaledValue& a, const ScaledValue& b) {
        if (a.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag - b.log_mag};
    }

    friend ScaledValue operator*(const ScaledValue& a, double c) {
        return a * from_real(c);
    }

    friend ScaledValue operator*(double c, const ScaledValue& a) {
        return a * from_real(c);
    }

    /// Sum in log space: exact up to the usual floating point error of
    /// exp/log, no overflow as long as the result is representable in logs.
    friend ScaledValue operator+(const ScaledValue& a, const ScaledValue& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const ScaledValue *hi = &a, *lo = &b;
        if (b.log_mag > a.log_mag) { hi = &b; lo = &a; }
        const double r = lo->sign * hi->sign * std::exp(lo->log_mag - hi->log_mag);
        const double s = 1.0 + r;
        if (s == 0.0) return {};
        return {s > 0 ? hi->sign : -hi->sign, hi->log_mag + std::log(std::fabs(s))};
    }

    friend ScaledValue operator-(const ScaledValue& a, const ScaledValue& b) {
        return a + (-b);
    }
};

/// Accumulates a sum of scaled terms without leaving log scale.
class ScaledAccumulator {
  public:
    void add(const ScaledValue& v) { sum_ = sum_ + v; }
    void add(double v) { sum_ = sum_ + ScaledValue::from_real(v); }
    ScaledValue value() const { return sum_; }

  private:
    ScaledValue sum_{};
};

} // namespace sskdv
