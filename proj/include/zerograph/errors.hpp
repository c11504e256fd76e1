#pragma once

#include <stdexcept>
#include <string>

namespace zerograph {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input object violates a type invariant (positivity, trace preservation,
// orthonormality, ...). `deviation` carries the measured violation.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}

  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

// Malformed serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Bad configuration for a driver or search (starts < 1, n out of range, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace zerograph
