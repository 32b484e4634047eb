#pragma once

#include <stdexcept>
#include <string>

namespace multstat {

/// Invalid argument or evaluation point outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative solver (Newton, bisection) failed to converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The equilibrium measure is not one-cut regular for the given potential.
class NotOneCutRegular : public SolverError {
public:
    using SolverError::SolverError;
};

/// Loss of precision, e.g. a non-positive recurrence coefficient.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A grid or matrix-size refinement did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested series order exceeds what the module can supply.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace multstat
