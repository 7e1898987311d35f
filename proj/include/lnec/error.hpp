#pragma once

#include <stdexcept>
#include <string>

namespace lnec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad ids, invalid field spec, cyclic network, bad JSON shape.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in finite field") {}
};

/// Raised when an exhaustive enumeration would exceed its configured limit.
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

/// The code construction could not find an admissible vector in the chosen field.
class FieldTooSmall : public Error {
 public:
  using Error::Error;
};

/// A structural precondition (path family, decodability) does not hold.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must hold for every code was violated.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace lnec
