#pragma once

#include <stdexcept>
#include <string>

namespace nilblock {

// Base for all library failures. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input (bad JSON, bad rational literal, shape mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

// Rejected number-field description (reducible polynomial, bad root interval).
class FieldError : public Error {
 public:
  using Error::Error;
};

// Precondition violated by a caller: division by zero, mixed fields,
// dimension mismatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Enumeration window or factorization bound exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace nilblock
