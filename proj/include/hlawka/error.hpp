#pragma once

#include <stdexcept>
#include <string>

namespace hlawka {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the inputs was violated (bad shape, bad radius, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Shape specification could not be parsed.
class ParseError : public DomainError {
 public:
  ParseError(std::size_t position, const std::string& reason)
      : DomainError("parse error at position " + std::to_string(position) + ": " + reason),
        position_(position),
        reason_(reason) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

// Numerical failure: pole, divergence, overflow, non-convergence.
class NumericError : public Error {
 public:
  using Error::Error;
};

class PoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DivergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// The requested Eisenstein component is identically zero (odd q, q = 2 mod 4).
class VanishingError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace hlawka
