#pragma once

#include <optional>
#include <span>
#include <vector>

#include "satcov/geometry.hpp"

namespace satcov {

inline constexpr int kDefaultOrderCap = 40;

struct CampbellMoments {
  double mean = 0;
  double variance = 0;
};

// Moment-matched Gamma surrogate of a region's accumulated power.
struct GammaApprox {
  double shape = 0;   // k
  double scale = 0;   // theta
  int shape_floor = 0;
  int shape_ceil = 0;
  Region region = Region::cluster;
};

// Everything the Laplace-transform integrals need about one region.
struct LaplaceContext {
  double r_lo = 0, r_hi = 0;  // slant-range bounds
  double gain = 0;
  double area_km2 = 0;
  double pdf_norm = 0;        // distance-law normalizer (see geometry)
  double alpha = 0;
  double m = 0;
  double lambda = 0;          // satellites per km^2

  static LaplaceContext make(const SystemParams& p, const ClusterGeometry& g,
                             Region region, double m);
};

struct BoundResult {
  double gamma_lin = 0;
  double lower = 0;
  double upper = 0;
  double heuristic = 0;
  int theorem = 0;
  int order_used = 0;          // highest Laplace-derivative order evaluated
  bool lower_defined = true;   // false when floor(shape) = 0 (theorem 2 only)
  std::vector<double> term_magnitudes;  // |T_n| of the series, for decay checks
};

// Mean/variance of the accumulated power over one region (Campbell's theorem).
CampbellMoments campbell_moments(const SystemParams& p, const ClusterGeometry& g,
                                 Region region, double m);

GammaApprox gamma_params(const SystemParams& p, const ClusterGeometry& g, Region region,
                         double m);

// rho(s): Laplace transform of one satellite's power, conditioned on the region.
double single_sat_laplace(const LaplaceContext& ctx, double s);

// Corollary closed form for m = 1 (2F1 difference); cross-check path.
double single_sat_laplace_closed_m1(const LaplaceContext& ctx, double s);

// L(s) = exp(-lambda |area| (1 - rho(s))).
double laplace(const LaplaceContext& ctx, double s);

// d^n log L / ds^n for n >= 1.
double log_laplace_derivative(const LaplaceContext& ctx, int n, double s,
                              int order_cap = kDefaultOrderCap);

// Scaled derivative y_n = s^n (d^n log L/ds^n) / n!; bounded, no overflow at
// high order. y_0 = log L(s).
double log_laplace_derivative_scaled(const LaplaceContext& ctx, int n, double s);

// m = 1 closed form of the scaled derivative (2F1 difference); cross-check path.
double log_laplace_derivative_scaled_m1(const LaplaceContext& ctx, int n, double s);

// d^n L / ds^n assembled with Faa di Bruno / Bell polynomials.
double laplace_derivative(const LaplaceContext& ctx, int n, double s,
                          int order_cap = kDefaultOrderCap);

// T_n = s^n (-1)^n L^(n)(s) / n! = E[(sX)^n e^{-sX}] / n! for n < count.
std::vector<double> scaled_ccdf_terms(const LaplaceContext& ctx, double s, int count);

BoundResult coverage_bounds_theorem1(const SystemParams& p, const ClusterGeometry& g,
                                     double m, double gamma_lin,
                                     int order_cap = kDefaultOrderCap,
                                     std::optional<double> shape_override = {});

BoundResult coverage_bounds_theorem2(const SystemParams& p, const ClusterGeometry& g,
                                     double m, double gamma_lin,
                                     int order_cap = kDefaultOrderCap,
                                     std::optional<double> shape_override = {});

// Linear interpolation of the integer-shape bounds at non-integer k.
double coverage_heuristic(double bound_at_floor, double bound_at_ceil, double k);

// (1-C) * integral of pcov(gamma) / ((1+gamma) ln 2) over linear gamma.
// Grids must be strictly increasing; the curve must reach far enough that the
// final integrand value is below 1e-6.
double spectral_efficiency(std::span<const double> gamma_lin,
                           std::span<const double> pcov, double cost_c);

enum class SensitivityKind {
  shape_wrt_cluster_range,   // d k_D / d R_clu   (cluster region only)
  scale_wrt_cluster_range,   // d theta_D / d R_clu
  shape_wrt_m,
  scale_wrt_m,
};

struct SensitivityResult {
  double value = 0;
  bool at_boundary = false;  // R_clu at its R_min limit; value is the limit
};

SensitivityResult sensitivity(const SystemParams& p, const ClusterGeometry& g, double m,
                              SensitivityKind kind, Region region);

}  // namespace satcov
