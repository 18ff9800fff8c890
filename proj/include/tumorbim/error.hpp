#pragma once

#include <stdexcept>
#include <string>

namespace tumorbim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where a function is defined or accurate.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid or degenerate curve (non-positive area, bad sampling, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An iteration (Newton, GMRES, bisection) failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace tumorbim
