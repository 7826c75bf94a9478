#pragma once

#include <stdexcept>
#include <string>

namespace rhomega {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed matrix file or JSON document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A parameter value is outside its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Operands do not share the required dimension.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Eigensolver reached max_iter before meeting the residual contract.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& what, double last_residual, long iterations)
        : Error(what), last_residual(last_residual), iterations(iterations) {}

    double last_residual;
    long iterations;
};

/// A vector that must be strictly positive has a nonpositive component.
class NonPositiveVector : public Error {
public:
    using Error::Error;
};

/// Optimizer input fails the structural requirement (positivity or full
/// indecomposability) and the override flag was not set.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration was requested above the configured size limit.
class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

/// A vector handed in as an eigenvector fails the eigen-equation check.
class ResidualTooLarge : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace rhomega
