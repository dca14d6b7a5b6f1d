#pragma once

#include <stdexcept>
#include <string>

namespace eqflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula was evaluated outside its domain (axis contact, x <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation does not exist for this symmetry class (e.g. phase plane with q = 0).
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied input (parameters, options, file contents).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NotStationary : public Error {
 public:
  using Error::Error;
};

class ParameterMismatch : public Error {
 public:
  using Error::Error;
};

/// Both leading coefficients of a resultant pair vanish identically.
class DegenerateResultant : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqflow
