#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "satcov/geometry.hpp"
#include "satcov/params.hpp"
#include "test_util.hpp"

using namespace satcov;
using testutil::de_integrate;
using testutil::rel_err;

namespace {

// Elevation seen from the user toward a satellite at slant range r.
double elevation_of_range(const SystemParams& p, double r) {
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  return std::asin((rs * rs - re * re - r * r) / (2.0 * re * r));
}

// Independent horizon range: bisect the elevation identity.
double horizon_range_bisect(const SystemParams& p) {
  double lo = p.sat_orbit_radius_km - p.earth_radius_km;
  double hi = p.sat_orbit_radius_km + p.earth_radius_km;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (elevation_of_range(p, mid) > p.min_elevation_rad)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double cap_area_integral(double sphere_radius, double polar_lo, double polar_hi) {
  auto f = [&](double th) {
    return 2.0 * M_PI * sphere_radius * sphere_radius * std::sin(th);
  };
  return de_integrate(f, polar_lo, polar_hi);
}

}  // namespace

TEST_CASE("horizon slant range") {
  SystemParams p;
  const double rmax = max_slant_range(p);
  CHECK(rmax == doctest::Approx(1031.82).epsilon(1e-4));
  CHECK(rel_err(rmax, horizon_range_bisect(p)) < 1e-12);
  CHECK(rel_err(elevation_of_range(p, rmax), p.min_elevation_rad) < 1e-12);
  // law of cosines at the horizon point
  const double rs2 = p.earth_radius_km * p.earth_radius_km + rmax * rmax +
                     2.0 * p.earth_radius_km * rmax * std::sin(p.min_elevation_rad);
  CHECK(rel_err(std::sqrt(rs2), p.sat_orbit_radius_km) < 1e-12);
}

TEST_CASE("cluster edge slant range") {
  SystemParams p;
  const double rclu = cluster_slant_range(p);
  CHECK(rclu == doctest::Approx(533.04).epsilon(1e-4));
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  const double direct = std::sqrt(re * re + rs * rs -
                                  2.0 * re * rs * std::cos(p.cluster_polar_angle_rad));
  CHECK(rel_err(rclu, direct) < 1e-9);
}

TEST_CASE("areas match spherical cap integrals") {
  SystemParams p;
  const double rs = p.sat_orbit_radius_km;
  const double theta_c = slant_range_to_polar(p, max_slant_range(p));
  CHECK(rel_err(dome_area(p), cap_area_integral(rs, 0.0, theta_c)) < 1e-10);
  CHECK(rel_err(cluster_area(p), cap_area_integral(rs, 0.0, p.cluster_polar_angle_rad)) <
        1e-10);
  // closed cap formula as a second witness
  CHECK(rel_err(cluster_area(p),
                2.0 * M_PI * rs * rs * (1.0 - std::cos(p.cluster_polar_angle_rad))) <
        1e-9);
}

TEST_CASE("assembled geometry is consistent") {
  SystemParams p;
  const ClusterGeometry g = make_cluster_geometry(p);
  CHECK(g.r_min_km == 500.0);
  CHECK(g.r_min_km < g.r_clu_km);
  CHECK(g.r_clu_km < g.r_max_km);
  CHECK(g.dome_area_km2 > 0);
  CHECK(g.cluster_area_km2 > 0);
  CHECK(rel_err(g.dome_area_km2, g.cluster_area_km2 + g.outside_area_km2) < 1e-12);
  CHECK(g.r_clu_km == cluster_slant_range(p));
  CHECK(g.r_max_km == max_slant_range(p));
}

TEST_CASE("polar angle round trips") {
  SystemParams p;
  const ClusterGeometry g = make_cluster_geometry(p);
  CHECK(slant_range_to_polar(p, g.r_min_km) == 0.0);
  CHECK(rel_err(slant_range_to_polar(p, g.r_clu_km), p.cluster_polar_angle_rad) < 1e-9);
  CHECK_THROWS_AS(slant_range_to_polar(p, 20000.0), std::invalid_argument);
}

TEST_CASE("off-axis beam angle round trips") {
  SystemParams p;
  const double deg = M_PI / 180.0;
  for (double beta : {0.2 * deg, 1.6 * deg, 10.0 * deg, 40.0 * deg}) {
    const double r = off_axis_to_cluster_range(p, beta);
    CHECK(r >= p.sat_orbit_radius_km - p.earth_radius_km);
    CHECK(rel_err(cluster_range_to_off_axis(p, r), beta) < 1e-9);
    // triangle identity: user sits beta off the nadir axis at range r
    const double re2 = p.sat_orbit_radius_km * p.sat_orbit_radius_km + r * r -
                       2.0 * p.sat_orbit_radius_km * r * std::cos(beta);
    CHECK(rel_err(std::sqrt(re2), p.earth_radius_km) < 1e-9);
  }
  CHECK(rel_err(off_axis_to_cluster_range(p, 0.0),
                p.sat_orbit_radius_km - p.earth_radius_km) < 1e-12);
  CHECK_THROWS_AS(off_axis_to_cluster_range(p, 80.0 * deg), std::invalid_argument);
}

TEST_CASE("conditional distance law") {
  SystemParams p;
  const ClusterGeometry g = make_cluster_geometry(p);
  for (Region region : {Region::cluster, Region::interference}) {
    const double lo = region == Region::cluster ? g.r_min_km : g.r_clu_km;
    const double hi = region == Region::cluster ? g.r_clu_km : g.r_max_km;
    // linear density, independent derivation from uniform cap placement
    for (double f : {0.0, 0.21, 0.5, 0.84, 1.0}) {
      const double r = lo + f * (hi - lo);
      const double want = 2.0 * r / (hi * hi - lo * lo);
      CHECK(rel_err(distance_pdf(p, g, region, r), want) < 1e-9);
      const double want_cdf = (r * r - lo * lo) / (hi * hi - lo * lo);
      CHECK(std::abs(distance_cdf(p, g, region, r) - want_cdf) < 1e-9);
    }
    // normalization via the independent integrator
    auto pdf = [&](double r) { return distance_pdf(p, g, region, r); };
    CHECK(rel_err(de_integrate(pdf, lo, hi), 1.0) < 1e-10);
    CHECK(distance_cdf(p, g, region, lo) == 0.0);
    CHECK(rel_err(distance_cdf(p, g, region, hi), 1.0) < 1e-9);
    // cdf slope equals pdf
    const double mid = 0.5 * (lo + hi), h = 1e-5 * (hi - lo);
    const double slope =
        (distance_cdf(p, g, region, mid + h) - distance_cdf(p, g, region, mid - h)) /
        (2.0 * h);
    CHECK(rel_err(slope, distance_pdf(p, g, region, mid)) < 1e-6);
    CHECK_THROWS_AS(distance_pdf(p, g, region, lo - 1.0), std::domain_error);
    CHECK_THROWS_AS(distance_cdf(p, g, region, hi + 1.0), std::domain_error);
  }
}

TEST_CASE("parameter validation rejects broken setups") {
  auto broken = [](auto&& mutate) {
    SystemParams p;
    mutate(p);
    return p;
  };
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.sat_orbit_radius_km = 6000.0; }).validate(),
      "require R_S > R_E > 0", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.min_elevation_rad = 0.0; }).validate(),
      "min elevation must lie in (0, pi/2)", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.min_elevation_rad = 2.0; }).validate(),
      "min elevation must lie in (0, pi/2)", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.cluster_polar_angle_rad = 0.0; }).validate(),
      "cluster polar angle must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.path_loss_exponent = 2.0; }).validate(),
      "path loss exponent must exceed 2", std::invalid_argument);
  CHECK_THROWS_WITH_AS(broken([](SystemParams& p) { p.nakagami_m = 0.3; }).validate(),
                       "nakagami m must be >= 0.5", std::invalid_argument);
  CHECK_THROWS_WITH_AS(broken([](SystemParams& p) { p.gain_inside = 0.0; }).validate(),
                       "gains must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(broken([](SystemParams& p) { p.gain_outside = 2.0; }).validate(),
                       "outside gain must not exceed inside gain",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.sat_density_per_km2 = -1.0; }).validate(),
      "satellite density must be nonnegative", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      broken([](SystemParams& p) { p.cluster_polar_angle_rad = 10.0 * M_PI / 180.0; })
          .validate(),
      "cluster cap exceeds the observable dome (reduce phi_clu or theta_min)",
      std::invalid_argument);
  // assembly runs validation
  SystemParams bad;
  bad.path_loss_exponent = 1.5;
  CHECK_THROWS_AS(make_cluster_geometry(bad), std::invalid_argument);
}

TEST_CASE("geometry invariants across parameter grid") {
  const double deg = M_PI / 180.0;
  for (double elev : {5.0, 25.0, 60.0}) {
    for (double phi : {0.5, 1.6, 3.0}) {
      for (double rs : {6871.0, 7371.0}) {
        SystemParams p;
        p.min_elevation_rad = elev * deg;
        p.cluster_polar_angle_rad = phi * deg;
        p.sat_orbit_radius_km = rs;
        bool ok = true;
        try {
          p.validate();
        } catch (const std::invalid_argument&) {
          ok = false;  // cap wider than the dome; skip
        }
        if (!ok) continue;
        const ClusterGeometry g = make_cluster_geometry(p);
        CHECK(g.r_min_km < g.r_clu_km);
        CHECK(g.r_clu_km <= g.r_max_km * (1 + 1e-12));
        CHECK(g.outside_area_km2 >= 0);
        CHECK(rel_err(g.dome_area_km2,
                      cap_area_integral(rs, 0.0, slant_range_to_polar(p, g.r_max_km))) <
              1e-9);
        auto pdf = [&](double r) { return distance_pdf(p, g, Region::cluster, r); };
        CHECK(rel_err(de_integrate(pdf, g.r_min_km, g.r_clu_km), 1.0) < 1e-9);
      }
    }
  }
}
