#include "satcov/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "satcov/specialfns.hpp"

namespace satcov {

void ShadowedRicianParams::validate() const {
  if (!(m >= 0.5)) throw std::invalid_argument("shadowed-rician m must be >= 0.5");
  if (!(b0 > 0)) throw std::invalid_argument("b0 must be positive");
  if (!(omega >= 0)) throw std::invalid_argument("omega must be nonnegative");
}

double nakagami_power_pdf(double m, double h) {
  if (!(m >= 0.5)) throw std::invalid_argument("nakagami m must be >= 0.5");
  if (h < 0) throw std::invalid_argument("power must be nonnegative");
  if (h == 0) {
    if (m < 1) return std::numeric_limits<double>::infinity();
    if (m == 1) return 1.0;
    return 0.0;
  }
  return std::exp(m * std::log(m) - m * h + (m - 1.0) * std::log(h) - std::lgamma(m));
}

double sample_nakagami_power(double m, Philox4x32& rng) {
  if (!(m >= 0.5)) throw std::invalid_argument("nakagami m must be >= 0.5");
  return rng.gamma(m, 1.0 / m);
}

double shadowed_rician_power_pdf(const ShadowedRicianParams& sr, double h) {
  sr.validate();
  if (h < 0) throw std::invalid_argument("power must be nonnegative");
  const double two_b0 = 2.0 * sr.b0;
  const double denom = two_b0 * sr.m + sr.omega;
  const double pref =
      std::exp(sr.m * std::log(two_b0 * sr.m / denom) - h / two_b0) / two_b0;
  if (sr.omega == 0) return pref;
  return pref * kummer_1f1(sr.m, 1.0, sr.omega * h / (two_b0 * denom));
}

double sample_shadowed_rician_power(const ShadowedRicianParams& sr, Philox4x32& rng) {
  sr.validate();
  const double w = sr.omega > 0 ? rng.gamma(sr.m, sr.omega / sr.m) : 0.0;
  const double sig = std::sqrt(sr.b0);
  const double re = std::sqrt(w) + sig * rng.normal();
  const double im = sig * rng.normal();
  return re * re + im * im;
}

double antenna_gain(bool in_cluster, const AntennaConfig& a) {
  if (!(a.gain_inside > 0) || !(a.gain_outside > 0))
    throw std::invalid_argument("antenna gains must be positive");
  return in_cluster ? a.gain_inside : a.gain_outside;
}

double rician_k_to_nakagami_m(double k_factor) {
  if (!(k_factor >= 0)) throw std::invalid_argument("rician K must be nonnegative");
  return (k_factor + 1.0) * (k_factor + 1.0) / (2.0 * k_factor + 1.0);
}

}  // namespace satcov
