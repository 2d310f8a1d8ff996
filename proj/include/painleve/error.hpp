#pragma once

#include <stdexcept>
#include <string>

namespace painleve {

// Base of every error raised by the library. The CLI maps subclasses to
// exit codes: DomainError/ConfigError -> 2, numerical failures -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// (alpha, k) = (0, 0): the zero solution has no phase.
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

// Point lies on or too close to a branch cut or a sector ray.
class BranchError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Numerical failures: blowup of an ODE solution, iterations that do not
// settle, arguments beyond the range a kernel supports.
class NumericalError : public Error {
public:
    using Error::Error;
};

class BlowupError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace painleve
