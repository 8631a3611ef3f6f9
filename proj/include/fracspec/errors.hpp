#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate or inadmissible geometric input (zero chord, edge >= pi, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A configured size budget (words, harmonics, basis size) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Invalid or incomplete run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge; carries the best estimate reached.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace fracspec
