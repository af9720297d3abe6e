#include "satcov/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace satcov {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void SystemParams::validate() const {
  if (!(earth_radius_km > 0) || !(sat_orbit_radius_km > earth_radius_km))
    throw std::invalid_argument("require R_S > R_E > 0");
  if (!(min_elevation_rad > 0) || !(min_elevation_rad < std::numbers::pi / 2))
    throw std::invalid_argument("min elevation must lie in (0, pi/2)");
  if (!(cluster_polar_angle_rad > 0))
    throw std::invalid_argument("cluster polar angle must be positive");
  if (!(path_loss_exponent > 2))
    throw std::invalid_argument("path loss exponent must exceed 2");
  if (!(nakagami_m >= 0.5)) throw std::invalid_argument("nakagami m must be >= 0.5");
  if (!(gain_inside > 0) || !(gain_outside > 0))
    throw std::invalid_argument("gains must be positive");
  if (gain_outside > gain_inside)
    throw std::invalid_argument("outside gain must not exceed inside gain");
  if (!(sat_density_per_km2 >= 0))
    throw std::invalid_argument("satellite density must be nonnegative");
  if (cluster_slant_range(*this) > max_slant_range(*this) * (1 + 1e-12))
    throw std::invalid_argument(
        "cluster cap exceeds the observable dome (reduce phi_clu or theta_min)");
}

std::vector<double> default_thresholds_db() {
  std::vector<double> v;
  for (int db = -10; db <= 10; ++db) v.push_back(static_cast<double>(db));
  return v;
}

double max_slant_range(const SystemParams& p) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  const double c = std::cos(p.min_elevation_rad);
  return -re * std::sin(p.min_elevation_rad) + std::sqrt(rs * rs - re * re * c * c);
}

double dome_area(const SystemParams& p) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  const double rmax = max_slant_range(p);
  return kTwoPi * rs * (rs - re - rmax * std::sin(p.min_elevation_rad));
}

double cluster_slant_range(const SystemParams& p) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  // r^2 = (R_S - R_E)^2 + 2 R_S R_E (1 - cos phi); stable for tiny phi
  const double one_minus_cos = 2.0 * std::pow(std::sin(p.cluster_polar_angle_rad / 2), 2);
  const double rmin = rs - re;
  return std::sqrt(rmin * rmin + 2.0 * rs * re * one_minus_cos);
}

double cluster_area(const SystemParams& p) {
  const double rs = p.sat_orbit_radius_km;
  const double one_minus_cos = 2.0 * std::pow(std::sin(p.cluster_polar_angle_rad / 2), 2);
  return kTwoPi * rs * rs * one_minus_cos;
}

double off_axis_to_cluster_range(const SystemParams& p, double off_axis_rad) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  const double c = std::cos(off_axis_rad), s = std::sin(off_axis_rad);
  const double disc = re * re - rs * rs * s * s;
  if (disc < 0)
    throw std::invalid_argument("beam never intersects Earth-visible cone");
  return rs * c - std::sqrt(disc);
}

double cluster_range_to_off_axis(const SystemParams& p, double r_clu_km) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  const double cosang =
      (rs * rs + r_clu_km * r_clu_km - re * re) / (2.0 * rs * r_clu_km);
  if (cosang < -1 || cosang > 1)
    throw std::invalid_argument("slant range not reachable from orbit shell");
  return std::acos(cosang);
}

double slant_range_to_polar(const SystemParams& p, double r_km) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  const double cosang = (rs * rs + re * re - r_km * r_km) / (2.0 * rs * re);
  if (cosang < -1 || cosang > 1)
    throw std::invalid_argument("slant range not reachable from orbit shell");
  return std::acos(cosang);
}

ClusterGeometry make_cluster_geometry(const SystemParams& p) {
  p.validate();
  ClusterGeometry g;
  g.r_min_km = p.sat_orbit_radius_km - p.earth_radius_km;
  g.r_clu_km = cluster_slant_range(p);
  g.r_max_km = max_slant_range(p);
  g.dome_area_km2 = dome_area(p);
  g.cluster_area_km2 = cluster_area(p);
  g.outside_area_km2 = g.dome_area_km2 - g.cluster_area_km2;
  if (g.outside_area_km2 < 0) g.outside_area_km2 = 0;
  return g;
}

namespace {

// Region bounds plus the normalization R_E * (cap height along z) that makes
// r / norm a density on [lo, hi].
struct RegionLaw {
  double lo, hi, norm;
};

RegionLaw region_law(const SystemParams& p, const ClusterGeometry& g, Region region) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  if (region == Region::cluster) {
    return {g.r_min_km, g.r_clu_km,
            re * rs * 2.0 * std::pow(std::sin(p.cluster_polar_angle_rad / 2), 2)};
  }
  const double cosphi = std::cos(p.cluster_polar_angle_rad);
  return {g.r_clu_km, g.r_max_km,
          re * (rs * cosphi - re - g.r_max_km * std::sin(p.min_elevation_rad))};
}

}  // namespace

double distance_pdf(const SystemParams& p, const ClusterGeometry& g, Region region,
                    double r_km) {
  const RegionLaw law = region_law(p, g, region);
  if (r_km < law.lo || r_km > law.hi)
    throw std::domain_error("distance outside region [" + std::to_string(law.lo) + ", " +
                            std::to_string(law.hi) + "] km");
  return r_km / law.norm;
}

double distance_cdf(const SystemParams& p, const ClusterGeometry& g, Region region,
                    double r_km) {
  const RegionLaw law = region_law(p, g, region);
  if (r_km < law.lo || r_km > law.hi)
    throw std::domain_error("distance outside region [" + std::to_string(law.lo) + ", " +
                            std::to_string(law.hi) + "] km");
  return (r_km * r_km - law.lo * law.lo) / (2.0 * law.norm);
}

}  // namespace satcov
