#include "satcov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "satcov/specialfns.hpp"

namespace satcov {

MomentStats empirical_moments(std::span<const double> samples) {
  const std::uint64_t n = samples.size();
  if (n < 2) throw std::invalid_argument("need at least 2 samples");
  KahanSum acc;
  for (double x : samples) acc.add(x);
  const double mean = acc.value() / static_cast<double>(n);
  KahanSum m2, m4;
  for (double x : samples) {
    const double d = x - mean;
    m2.add(d * d);
    m4.add(d * d * d * d);
  }
  MomentStats out;
  out.n = n;
  out.mean = mean;
  out.variance = m2.value() / static_cast<double>(n - 1);
  out.se_mean = std::sqrt(out.variance / static_cast<double>(n));
  const double m4c = m4.value() / static_cast<double>(n);
  const double var_of_var =
      (m4c - out.variance * out.variance * (static_cast<double>(n) - 3.0) /
                 (static_cast<double>(n) - 1.0)) /
      static_cast<double>(n);
  out.se_variance = var_of_var > 0 ? std::sqrt(var_of_var) : 0.0;
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.size() < 2) throw std::invalid_argument("need at least 2 samples");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(std::span<const double> sorted_samples,
                   const std::function<double(double)>& cdf) {
  const std::uint64_t n = sorted_samples.size();
  if (n == 0) throw std::invalid_argument("ks_distance on empty sample");
  double d = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max({d, f - lo, hi - f});
  }
  return d;
}

double ks_pvalue(double d, std::uint64_t n) {
  if (d <= 0) return 1.0;
  const double rn = std::sqrt(static_cast<double>(n));
  const double lam = (rn + 0.12 + 0.11 / rn) * d;
  double sum = 0;
  for (int j = 1; j <= 100; ++j) {
    const double term = 2.0 * ((j % 2) ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lam * lam);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson interval needs n >= 1");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  WilsonInterval w;
  w.center = (p + z2 / (2.0 * nn)) / denom;
  w.halfwidth = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return w;
}

double chi2_sf(double x, double dof) {
  if (x <= 0) return 1.0;
  return 1.0 - gamma_p(dof / 2.0, x / 2.0);
}

void SuffStats::add(std::uint64_t trial_index, double value) {
  Block& b = blocks_[trial_index / kBlock];
  b.n += 1;
  b.s1 += value;
  const double v2 = value * value;
  b.s2 += v2;
  b.s3 += v2 * value;
  b.s4 += v2 * v2;
}

void SuffStats::merge(const SuffStats& other) {
  for (const auto& [id, blk] : other.blocks_) {
    if (blocks_.contains(id))
      throw std::invalid_argument(
          "cannot merge runs sharing trial block " + std::to_string(id) +
          "; align run boundaries to multiples of " + std::to_string(kBlock));
    blocks_[id] = blk;
  }
}

MomentStats SuffStats::finalize() const {
  std::uint64_t n = 0;
  KahanSum s1, s2, s3, s4;
  for (const auto& [id, blk] : blocks_) {  // std::map iterates in block order
    n += blk.n;
    s1.add(blk.s1);
    s2.add(blk.s2);
    s3.add(blk.s3);
    s4.add(blk.s4);
  }
  if (n < 2) throw std::invalid_argument("need at least 2 samples");
  const double nn = static_cast<double>(n);
  const double m1 = s1.value() / nn;
  const double m2 = s2.value() / nn;
  const double m3 = s3.value() / nn;
  const double m4 = s4.value() / nn;
  const double var_pop = m2 - m1 * m1;
  const double m4c = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
  MomentStats out;
  out.n = n;
  out.mean = m1;
  out.variance = var_pop * nn / (nn - 1.0);
  out.se_mean = std::sqrt(std::max(0.0, out.variance / nn));
  const double var_of_var =
      (m4c - out.variance * out.variance * (nn - 3.0) / (nn - 1.0)) / nn;
  out.se_variance = var_of_var > 0 ? std::sqrt(var_of_var) : 0.0;
  return out;
}

}  // namespace satcov
