#pragma once

#include "satcov/params.hpp"

namespace satcov {

// Derived visibility/cluster geometry for one parameter set.
struct ClusterGeometry {
  double r_min_km = 0;        // R_S - R_E, nadir distance
  double r_clu_km = 0;        // slant range at the cluster cap edge
  double r_max_km = 0;        // slant range at the minimum-elevation horizon
  double dome_area_km2 = 0;   // observable dome |A|
  double cluster_area_km2 = 0;
  double outside_area_km2 = 0;
};

// Slant range to a satellite seen at elevation theta_min (law of cosines root).
double max_slant_range(const SystemParams& p);

// Observable dome area via the hat-box (cap height) identity.
double dome_area(const SystemParams& p);

// Slant range to the edge of the cluster cap (polar half-angle phi_clu).
double cluster_slant_range(const SystemParams& p);

double cluster_area(const SystemParams& p);

// Distance to the edge of a beam of half-angle off_axis_rad pointed at nadir.
// Throws std::invalid_argument when the beam misses the sphere of users.
double off_axis_to_cluster_range(const SystemParams& p, double off_axis_rad);

// Inverse of the above: off-axis angle subtending a given edge slant range.
double cluster_range_to_off_axis(const SystemParams& p, double r_clu_km);

// Earth-center polar angle of a point at slant range r from the user.
double slant_range_to_polar(const SystemParams& p, double r_km);

// Validates p and assembles all derived quantities.
ClusterGeometry make_cluster_geometry(const SystemParams& p);

// Conditional slant-range distribution of a uniformly placed satellite,
// inside the cluster cap (region=cluster) or in the visible remainder.
double distance_pdf(const SystemParams& p, const ClusterGeometry& g, Region region, double r_km);
double distance_cdf(const SystemParams& p, const ClusterGeometry& g, Region region, double r_km);

}  // namespace satcov
