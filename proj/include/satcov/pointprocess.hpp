#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "satcov/geometry.hpp"
#include "satcov/rng.hpp"

namespace satcov {

struct SatelliteSample {
  std::array<double, 3> position{};  // on the orbit sphere, user along +z
  double distance_to_user_km = 0;
  bool in_cluster = false;
};

struct Constellation {
  std::vector<SatelliteSample> cluster;
  std::vector<SatelliteSample> outside;
};

// Poisson count by chop-down inversion; large rates are split into independent
// chunks so the running CDF never underflows.
std::uint64_t sample_count(double rate, Philox4x32& rng);

// n points uniform on the annular cap zenith_lo <= polar angle <= zenith_hi of
// the orbit sphere (uniform z + uniform azimuth).
std::vector<std::array<double, 3>> sample_cap_uniform(std::size_t n, double zenith_lo,
                                                      double zenith_hi,
                                                      double sphere_radius_km,
                                                      Philox4x32& rng);

// One snapshot of the visible constellation, cluster cap and remainder sampled
// as independent Poisson processes.
Constellation sample_constellation(const SystemParams& p, const ClusterGeometry& g,
                                   Philox4x32& rng);

}  // namespace satcov
