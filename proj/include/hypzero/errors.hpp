#pragma once

#include <stdexcept>
#include <string>

namespace hypzero {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (log 0, z = 0, eta <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly at a branch point or pole.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// A point required to lie in (or out of) the region E does not.
class RegionError : public Error {
 public:
  using Error::Error;
};

/// Gradient-flow or level-curve tracing failed (corrector divergence, stall).
class TracingError : public Error {
 public:
  using Error::Error;
};

/// A flow trace ended without reaching any classifying endpoint.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

/// Quadrature could not reach the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved_log_error)
      : Error(what), achieved_log_error_(achieved_log_error) {}
  /// Natural log of the absolute error bound that was reached.
  double achieved_log_error() const { return achieved_log_error_; }

 private:
  double achieved_log_error_;
};

/// Newton continuation of the implicit I2 path broke down.
class ContinuationError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration or CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypzero
