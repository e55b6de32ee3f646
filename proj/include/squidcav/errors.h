#pragma once

#include <stdexcept>
#include <string>

namespace squidcav {

// Base for every error raised by the library. The CLI maps NumericalError
// subclasses to exit status 3 and everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical-contract violations.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonHermitian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotNormalized : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, int required_dim)
      : NumericalError(what), required_dim_(required_dim) {}

  // Smallest Fock dimension estimated to satisfy the leakage bound, or -1 if
  // none below the hard cap does.
  int required_dim() const noexcept { return required_dim_; }

 private:
  int required_dim_;
};

class NullOutcome : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace squidcav
