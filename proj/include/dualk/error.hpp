#pragma once

#include <stdexcept>
#include <string>

namespace dualk {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so new errors should derive from one of the three families.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input data violates a documented precondition or schema.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A command needs an input block that the document does not provide.
class MissingBlockError : public Error {
public:
    using Error::Error;
};

/// A cross-check between two independent computations disagreed.
class InvariantError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace dualk
