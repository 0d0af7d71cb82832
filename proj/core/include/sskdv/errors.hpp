#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sskdv {

/// Parameter outside the validity range of an operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A quadrature or iteration failed to reach its internal tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the range where a representation is valid.
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid too coarse or stencil does not fit.
struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A log-combined product still exceeds the representable range.
struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncation heuristic cannot produce boundary conditions for these parameters.
struct BCError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton iteration diverged; carries the residual-norm history.
struct NewtonDivergence : std::runtime_error {
    std::vector<double> residual_history;
    NewtonDivergence(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), residual_history(std::move(history)) {}
};

/// Scalar root solve failed to bracket or converge.
struct RootBracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace sskdv
