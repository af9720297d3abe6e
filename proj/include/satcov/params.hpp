#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace satcov {

enum class Region { cluster, interference };

// Downlink scenario parameters. Lengths in km, angles in radians, gains linear.
struct SystemParams {
  double earth_radius_km = 6371.0;
  double sat_orbit_radius_km = 6871.0;
  double min_elevation_rad = 0.436332312998582;   // 25 deg
  double cluster_polar_angle_rad = 0.027925268031909;  // 1.6 deg
  double sat_density_per_km2 = 0.0;
  double path_loss_exponent = 3.0;
  double nakagami_m = 2.0;
  double gain_inside = 1.0;
  double gain_outside = 0.1;
  std::vector<double> sir_thresholds_db;  // empty -> callers use default_thresholds_db()
  std::uint64_t rng_seed = 1;
  std::uint64_t mc_trials = 100000;

  // Throws std::invalid_argument on any violated constraint, including a
  // cluster cap that pokes outside the observable dome.
  void validate() const;
};

// -10..10 dB in 1 dB steps.
std::vector<double> default_thresholds_db();

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace satcov
