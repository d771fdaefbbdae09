#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ifd {

namespace detail {

/// Short scientific rendering of a double for error messages.
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace detail

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical computation could not meet its contract. The integrator
/// treats these as divergence of the state rather than as a setup fault.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularGram : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration. `field()` names the offending dotted key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ifd
