#pragma once

#include <stdexcept>
#include <string>

namespace mubplane {

// Bad argument values: out-of-range parameters, mismatched field specs,
// malformed inputs.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public DomainError {
public:
    using DomainError::DomainError;
};

// Requested object exceeds a configured size cap or an integer type.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (e.g. a structure that fails
// verification was passed where a verified one is required).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// More than d+1 bases in a set: a theorem violation, not a numeric failure.
class BoundViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NotPrimePowerError : public DomainError {
public:
    using DomainError::DomainError;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mubplane
