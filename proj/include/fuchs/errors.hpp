#pragma once

#include <stdexcept>
#include <string>

namespace fuchs {

// Division by an element that is zero at its known precision.
struct ZeroDivisionError : std::domain_error {
    using std::domain_error::domain_error;
};

// Input outside the mathematical domain of an operation (not a unit in U_1,
// valuation too small, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A digit needed by the computation is not determined at the operand's
// absolute precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands built over different (p, n, m) parameters or incompatible spaces.
struct ParameterMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Invalid run configuration (even prime, n < 1, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A dense matrix would exceed the configured memory budget.
struct OutOfBudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The induced cell map failed to be a bijection. This cannot happen when the
// truncation law M = n + m holds; it signals a resolution-consistency bug and
// is treated as fatal.
struct NotAPermutationError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fuchs
