#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-intersection could not be derived: m_C does not divide the
/// weighted sum of the neighbouring intersection numbers.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

class InvalidPrime : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Caller asked to blow down something that is not a smooth rational
/// (-1)-curve.
class NotContractible : public Error {
 public:
  using Error::Error;
};

class NotConnected : public Error {
 public:
  using Error::Error;
};

class NonUnimodularMultiplicities : public Error {
 public:
  using Error::Error;
};

class BadBase : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON fiber, matrix or trace input.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant (zero-fiber rule, replay equality, ...) broke.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cartan
