#ifndef SCHUR_HARMONICS_ERRORS_HPP
#define SCHUR_HARMONICS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace schur_harmonics {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Malformed input: non-finite entries, shape mismatch, empty sample sets.
class InvalidInput : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

// A numerical postcondition (residual, inequality, convergence) failed.
class NumericFailure : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric_failure"; }
};

// Quadrature too coarse for the requested truncation.
class UnderResolved : public NumericFailure {
public:
  using NumericFailure::NumericFailure;
  const char* kind() const noexcept override { return "under_resolved"; }
};

// Requested problem size exceeds a configured memory cap.
class CapacityExceeded : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
  const char* kind() const noexcept override { return "capacity_exceeded"; }
};

} // namespace schur_harmonics

#endif
