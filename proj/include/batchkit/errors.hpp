#pragma once

#include <stdexcept>

namespace batchkit {

/// Operand shapes or fields do not match.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed its configured size guard.
class GuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A value violates a documented precondition (rank, parity, range, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace batchkit
