#pragma once

#include <stdexcept>
#include <string>

namespace dsq {

// Invalid or out-of-domain input (maps to CLI exit status 1).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Missing physical calibration for a unit conversion.
class CalibrationError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// Input matrix does not satisfy the structural precondition of a routine
// (non-Hermitian density matrix, non-X state for the closed forms, ...).
class ValidationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Integration, quadrature or solver failure (maps to CLI exit status 2).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dsq
