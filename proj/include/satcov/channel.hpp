#pragma once

#include "satcov/rng.hpp"

namespace satcov {

// LOS-plus-scatter fading: LOS power Gamma-shadowed (shape m, mean omega),
// scattered component complex Gaussian with total average power 2*b0.
struct ShadowedRicianParams {
  double m = 2.0;
  double b0 = 0.128;
  double omega = 0.832;

  void validate() const;
};

// Sectored beam model. Frequency/receive-gain fields are documentation only;
// they cancel in the SIR ratio and never enter the math.
struct AntennaConfig {
  double gain_inside = 1.0;
  double gain_outside = 0.1;
  double carrier_freq_hz = 2.0e9;
  double rx_gain = 1.0;
  double speed_of_light = 299792458.0;
};

// Nakagami-m power: Gamma(m, 1/m) so E[H] = 1.
double nakagami_power_pdf(double m, double h);
double sample_nakagami_power(double m, Philox4x32& rng);

// Squared magnitude of shadowed-Rician fading.
double shadowed_rician_power_pdf(const ShadowedRicianParams& sr, double h);
double sample_shadowed_rician_power(const ShadowedRicianParams& sr, Philox4x32& rng);

double antenna_gain(bool in_cluster, const AntennaConfig& a);

// Rician-K to Nakagami-m mapping m = (K+1)^2 / (2K+1).
double rician_k_to_nakagami_m(double k_factor);

}  // namespace satcov
