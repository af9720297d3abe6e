#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace satcov {

struct MomentStats {
  double mean = 0;
  double variance = 0;      // unbiased
  double se_mean = 0;
  double se_variance = 0;   // from the empirical fourth central moment
  std::uint64_t n = 0;
};

MomentStats empirical_moments(std::span<const double> samples);

// Right-continuous empirical CDF.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);
  double operator()(double x) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
double ks_distance(std::span<const double> sorted_samples,
                   const std::function<double(double)>& cdf);

// Asymptotic KS tail probability (p-value for distance d at sample size n).
double ks_pvalue(double d, std::uint64_t n);

struct WilsonInterval {
  double center = 0;
  double halfwidth = 0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n,
                               double z = 1.959963984540054);

// Upper tail of the chi-squared distribution.
double chi2_sf(double x, double dof);

// Sufficient statistics with schedule-independent merging: values are
// accumulated into fixed blocks of consecutive trial indices, so merging two
// runs that cover disjoint block-aligned index ranges reproduces a single
// combined run bit for bit.
class SuffStats {
 public:
  static constexpr std::uint64_t kBlock = 4096;

  void add(std::uint64_t trial_index, double value);
  void merge(const SuffStats& other);
  MomentStats finalize() const;
  bool operator==(const SuffStats& other) const = default;

 private:
  struct Block {
    std::uint64_t n = 0;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;  // raw power sums
    bool operator==(const Block&) const = default;
  };
  std::map<std::uint64_t, Block> blocks_;
};

}  // namespace satcov
