#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace satcov {

// Numerical failure (quadrature non-convergence, derivative order cap, ...).
// Carries the best estimate computed so far when one exists.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what,
                        double best_estimate = std::numeric_limits<double>::quiet_NaN(),
                        double error_estimate = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), best_(best_estimate), err_(error_estimate) {}

  double best_estimate() const { return best_; }
  double error_estimate() const { return err_; }

 private:
  double best_;
  double err_;
};

// Bad scenario file / CLI input. Maps to process exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace satcov
