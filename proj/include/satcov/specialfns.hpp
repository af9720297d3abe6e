#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "satcov/errors.hpp"

namespace satcov {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0;
  double error = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b]. Throws NumericError with the best
// estimate attached if the tolerance is not met within max_subdivisions.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, const QuadratureSpec& spec = {});

// Gauss hypergeometric 2F1(a, b; c; z) on the restricted domain c > b > 0,
// z <= 0: power series for small |z|, Euler integral otherwise.
double gauss_2f1(double a, double b, double c, double z);

// Confluent hypergeometric 1F1(a; b; x) for x >= 0 (all-positive power series).
double kummer_1f1(double a, double b, double x);

// P(Erlang(k_tilde, theta) <= x) as the explicit finite sum
// 1 - e^{-x/theta} sum_{n<k_tilde} (x/theta)^n / n!.
double erlang_cdf_bound(int k_tilde, double theta, double x);

// Regularized lower incomplete gamma P(a, x) via series / continued fraction.
double gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b) via Lentz continued fraction.
double inc_beta_reg(double a, double b, double x);

// Partial exponential Bell polynomial B_{n,q}(x_1..x_{n-q+1}) by recurrence.
double bell_incomplete(int n, int q, std::span<const double> x);

// Rising factorial m (m+1) ... (m+n-1).
double pochhammer(double m, int n);

// n! as double; exact table through 170, throws beyond (overflow in double).
double factorial(int n);

double binomial(int n, int k);

// Neumaier compensated accumulator.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

}  // namespace satcov
