#pragma once

#include <stdexcept>
#include <string>

namespace ballbeam {

// Invalid or inconsistent configuration; the message names the violated
// constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Step-size restriction of the three-layer scheme: 1 - tau*a2/a1 must stay
// positive.
class StepSizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Vectors or operators of mismatched length combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The per-step fixed-point iteration did not reach its stop criterion.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(int step, double residual, const std::string& what)
      : std::runtime_error(what), step_(step), residual_(residual) {}
  int step() const noexcept { return step_; }
  double residual() const noexcept { return residual_; }

 private:
  int step_;
  double residual_;
};

// Non-finite values or an impossible operator assembly met mid-run.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

}  // namespace ballbeam
