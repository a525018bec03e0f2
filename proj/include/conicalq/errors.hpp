#pragma once

#include <stdexcept>
#include <string>

namespace conicalq {

// Base of every error raised by the library. Each subclass carries a short
// machine-friendly tag used by the CLI when recording failed table rows.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* tag() const noexcept { return "error"; }
};

// Argument outside the mathematical or implemented domain.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* tag() const noexcept override { return "domain"; }
};

// A series hit its term budget before satisfying its stopping rule.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
  const char* tag() const noexcept override { return "nonconvergence"; }
};

// An asymptotic method was asked to work below its validity floor.
class ValidityError : public Error {
 public:
  using Error::Error;
  const char* tag() const noexcept override { return "validity"; }
};

// A value left the double-precision range.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, int order)
      : Error(what), order_(order) {}
  const char* tag() const noexcept override { return "overflow"; }
  // Order m of the first iterate that left the range (-1 when not applicable).
  int order() const noexcept { return order_; }

 private:
  int order_;
};

// A diagnostic quantity is undefined at the requested point.
class DegenerateError : public Error {
 public:
  using Error::Error;
  const char* tag() const noexcept override { return "degenerate"; }
};

}  // namespace conicalq
