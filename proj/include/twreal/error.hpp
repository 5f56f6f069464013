#pragma once

#include <stdexcept>
#include <string>

namespace twreal {

/// Operands of incompatible size (matrix dims, algebra element length, ...).
class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A required piece of data is missing or an operation's precondition fails
/// (no real structure, twist not invariant, non-selfadjoint one-form, ...).
class PreconditionViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Malformed or invariant-violating input (bad sign, parameters outside a
/// family, unparsable document).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace twreal
