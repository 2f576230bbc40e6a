#pragma once

#include <stdexcept>
#include <string>

namespace gwexcess {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Operands live over different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// Precondition on an argument is violated (wrong shape, degree, zero input...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The input is well formed but fails a genericity hypothesis (cover check,
// artinian test, vanishing on the plane).
class InadmissibleInput : public Error {
 public:
  using Error::Error;
};

// A mathematical identity that must hold by construction failed. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

// An iteration or search bound was exhausted.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace gwexcess
