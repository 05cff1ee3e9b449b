#pragma once

#include <stdexcept>
#include <string>

namespace exunit {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input: out-of-range parameters, unparseable text, constant polynomials.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A prime above the configured root-scan cap was handed to an exhaustive scan.
class PrimeTooLargeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An enumeration would exceed its configured budget.
class EnumerationTooLargeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An explicitly requested closed form does not apply to the query.
class FastPathInapplicable : public Error {
 public:
  using Error::Error;
};

// An internal identity failed. Never the result of valid input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace exunit
