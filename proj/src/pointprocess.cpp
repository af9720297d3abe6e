#include "satcov/pointprocess.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace satcov {

namespace {

// Inversion by chop-down; one uniform per draw, valid for modest rates.
std::uint64_t poisson_small(double rate, Philox4x32& rng) {
  const double u = rng.uniform();
  double p = std::exp(-rate);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= rate / static_cast<double>(k);
    cdf += p;
    if (k > 100000) break;  // p has underflowed; u was in the far tail
  }
  return k;
}

}  // namespace

std::uint64_t sample_count(double rate, Philox4x32& rng) {
  if (rate < 0) throw std::invalid_argument("poisson rate must be nonnegative");
  if (rate == 0) return 0;
  std::uint64_t total = 0;
  while (rate > 30.0) {
    total += poisson_small(30.0, rng);
    rate -= 30.0;
  }
  return total + poisson_small(rate, rng);
}

std::vector<std::array<double, 3>> sample_cap_uniform(std::size_t n, double zenith_lo,
                                                      double zenith_hi,
                                                      double sphere_radius_km,
                                                      Philox4x32& rng) {
  if (!(zenith_lo >= 0) || !(zenith_hi > zenith_lo) || !(zenith_hi <= std::numbers::pi))
    throw std::invalid_argument("cap requires 0 <= zenith_lo < zenith_hi <= pi");
  const double z_hi = sphere_radius_km * std::cos(zenith_lo);
  const double z_lo = sphere_radius_km * std::cos(zenith_hi);
  std::vector<std::array<double, 3>> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = rng.uniform(z_lo, z_hi);
    const double az = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double rho = std::sqrt(std::max(0.0, sphere_radius_km * sphere_radius_km - z * z));
    pts.push_back({rho * std::cos(az), rho * std::sin(az), z});
  }
  return pts;
}

Constellation sample_constellation(const SystemParams& p, const ClusterGeometry& g,
                                   Philox4x32& rng) {
  Constellation out;
  const double lam = p.sat_density_per_km2;
  const double re = p.earth_radius_km;
  const double phi_max = slant_range_to_polar(p, g.r_max_km);

  auto fill = [&](double zenith_lo, double zenith_hi, double area, bool in_cluster,
                  std::vector<SatelliteSample>& dst) {
    const std::uint64_t n = sample_count(lam * area, rng);
    if (n == 0) return;
    auto pts = sample_cap_uniform(n, zenith_lo, zenith_hi, p.sat_orbit_radius_km, rng);
    dst.reserve(pts.size());
    for (const auto& pos : pts) {
      SatelliteSample s;
      s.position = pos;
      // user at (0, 0, R_E)
      const double dz = pos[2] - re;
      s.distance_to_user_km =
          std::sqrt(pos[0] * pos[0] + pos[1] * pos[1] + dz * dz);
      s.in_cluster = in_cluster;
      dst.push_back(s);
    }
  };

  fill(0.0, p.cluster_polar_angle_rad, g.cluster_area_km2, true, out.cluster);
  fill(p.cluster_polar_angle_rad, phi_max, g.outside_area_km2, false, out.outside);
  return out;
}

}  // namespace satcov
