#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ssrent {

using cplx = std::complex<double>;

// Amplitudes at or below this magnitude are treated as exact zeros.
inline constexpr double kDropTol = 1e-12;
// Relative tolerance for rank / Schmidt-coefficient decisions.
inline constexpr double kRankTol = 1e-9;
// Tolerance on norms, traces and probabilities.
inline constexpr double kNormTol = 1e-9;

struct LayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Violated operation precondition (product state where a non-product one is
// required, invalid rule parameters, and the like).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal cross-check fails; indicates a bug, not bad input.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

struct CutoffError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace ssrent
