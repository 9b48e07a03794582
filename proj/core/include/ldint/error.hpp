#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldint {

/// Base class for numerical failures raised by the library. Precondition
/// violations on arguments use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A system lacks an evaluator that the requested scheme needs.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Denominator of a rational increment function vanished.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, std::complex<double> mu) : Error(what), mu_(mu) {}
  std::complex<double> mu() const { return mu_; }

 private:
  std::complex<double> mu_;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Iterative solve exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : Error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residual_history() const { return residuals_; }
  double final_residual() const { return residuals_.empty() ? 0.0 : residuals_.back(); }

 private:
  std::vector<double> residuals_;
};

/// Evaluator produced a NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Wraps a stepper failure with the index of the step that failed.
class StepError : public Error {
 public:
  StepError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace ldint
