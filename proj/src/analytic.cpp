#include "satcov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "satcov/specialfns.hpp"

namespace satcov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Sum over j of log((m+j-1)/j): log of (m)_n / n!. Incremental form stays
// accurate even for m ~ 1e20 where lgamma differences lose all precision.
double log_poch_over_fact(double m, int n) {
  KahanSum acc;
  for (int j = 1; j <= n; ++j) acc.add(std::log((m + j - 1) / j));
  return acc.value();
}

// |y_n| for n >= 1: magnitude of the scaled log-Laplace derivative
// s^n (d^n log L / ds^n) / n! = (-1)^n |y_n|.
double scaled_log_derivative_magnitude(const LaplaceContext& ctx, int n, double s) {
  const double lpr = log_poch_over_fact(ctx.m, n);
  const double alpha = ctx.alpha, m = ctx.m, gain = ctx.gain;
  const auto integrand = [&](double r) {
    const double su = s * gain * std::pow(r, -alpha) / m;
    const double log1psu = std::log1p(su);
    const double logw = std::log(su) - log1psu;  // w = su / (1 + su)
    return (r / ctx.pdf_norm) * std::exp(lpr + n * logw - m * log1psu);
  };
  const QuadratureResult q = integrate_adaptive(integrand, ctx.r_lo, ctx.r_hi);
  return ctx.lambda * ctx.area_km2 * q.value;
}

// T_n magnitudes via the rescaled Bell recurrence on |y_i|: every term is
// nonnegative, so no cancellation enters the series.
std::vector<double> ccdf_terms_from_magnitudes(const LaplaceContext& ctx, double s,
                                               int count) {
  std::vector<double> terms(count, 0.0);
  const double big_l = laplace(ctx, s);
  terms[0] = big_l;
  if (count == 1) return terms;

  std::vector<double> ymag(count, 0.0);
  for (int i = 1; i < count; ++i) ymag[i] = scaled_log_derivative_magnitude(ctx, i, s);

  // bhat[n][q] = sum_i (i/n) |y_i| bhat[n-i][q-1]
  std::vector<std::vector<double>> bhat(count, std::vector<double>(count, 0.0));
  bhat[0][0] = 1.0;
  for (int n = 1; n < count; ++n) {
    for (int q = 1; q <= n; ++q) {
      KahanSum acc;
      const int imax = n - q + 1;
      for (int i = 1; i <= imax; ++i)
        acc.add(static_cast<double>(i) / n * ymag[i] * bhat[n - i][q - 1]);
      bhat[n][q] = acc.value();
    }
    KahanSum row;
    for (int q = 1; q <= n; ++q) row.add(bhat[n][q]);
    terms[n] = clamp01(big_l * row.value());
  }
  return terms;
}

struct SeriesBounds {
  double at_floor = 0;  // partial sum over n < floor(k)
  double at_ceil = 0;   // partial sum over n < ceil(k)
};

SeriesBounds partial_sums(const std::vector<double>& terms, int k_floor, int k_ceil) {
  SeriesBounds out;
  KahanSum acc;
  for (int n = 0; n < k_ceil; ++n) {
    if (n == k_floor) out.at_floor = clamp01(acc.value());
    acc.add(terms[n]);
  }
  if (k_floor == k_ceil) out.at_floor = clamp01(acc.value());
  out.at_ceil = clamp01(acc.value());
  return out;
}

void check_order_cap(double k, int order_cap, int theorem) {
  const double highest = std::ceil(k) - 1;
  if (!(k > 0) || !std::isfinite(k))
    throw std::invalid_argument("gamma shape must be positive and finite");
  if (highest > order_cap) {
    const int other = theorem == 1 ? 2 : 1;
    throw NumericError("series for theorem " + std::to_string(theorem) + " needs " +
                       std::to_string(static_cast<long long>(highest)) +
                       " derivative orders (shape k = " + std::to_string(k) +
                       ", cap " + std::to_string(order_cap) + "); use theorem " +
                       std::to_string(other) + " in this regime");
  }
}

}  // namespace

LaplaceContext LaplaceContext::make(const SystemParams& p, const ClusterGeometry& g,
                                    Region region, double m) {
  if (!(m >= 0.5)) throw std::invalid_argument("nakagami m must be >= 0.5");
  const double re = p.earth_radius_km, rs = p.sat_orbit_radius_km;
  LaplaceContext ctx;
  ctx.alpha = p.path_loss_exponent;
  ctx.m = m;
  ctx.lambda = p.sat_density_per_km2;
  if (region == Region::cluster) {
    ctx.r_lo = g.r_min_km;
    ctx.r_hi = g.r_clu_km;
    ctx.gain = p.gain_inside;
    ctx.area_km2 = g.cluster_area_km2;
    ctx.pdf_norm = re * rs * 2.0 * std::pow(std::sin(p.cluster_polar_angle_rad / 2), 2);
  } else {
    ctx.r_lo = g.r_clu_km;
    ctx.r_hi = g.r_max_km;
    ctx.gain = p.gain_outside;
    ctx.area_km2 = g.outside_area_km2;
    ctx.pdf_norm = re * (rs * std::cos(p.cluster_polar_angle_rad) - re -
                         g.r_max_km * std::sin(p.min_elevation_rad));
  }
  if (!(ctx.r_hi > ctx.r_lo))
    throw std::invalid_argument("degenerate region: upper slant range must exceed lower");
  return ctx;
}

CampbellMoments campbell_moments(const SystemParams& p, const ClusterGeometry& g,
                                 Region region, double m) {
  if (!(m >= 0.5)) throw std::invalid_argument("nakagami m must be >= 0.5");
  const double alpha = p.path_loss_exponent;
  const double gain = region == Region::cluster ? p.gain_inside : p.gain_outside;
  const double lo = region == Region::cluster ? g.r_min_km : g.r_clu_km;
  const double hi = region == Region::cluster ? g.r_clu_km : g.r_max_km;
  if (!(hi > lo)) throw std::invalid_argument("degenerate region");
  const double base =
      kTwoPi * p.sat_density_per_km2 * p.sat_orbit_radius_km / p.earth_radius_km;
  CampbellMoments mom;
  mom.mean = base * gain * (std::pow(lo, 2 - alpha) - std::pow(hi, 2 - alpha)) /
             (alpha - 2);
  mom.variance = base * gain * gain * (1 + 1 / m) *
                 (std::pow(lo, 2 - 2 * alpha) - std::pow(hi, 2 - 2 * alpha)) /
                 (2 * alpha - 2);
  return mom;
}

GammaApprox gamma_params(const SystemParams& p, const ClusterGeometry& g, Region region,
                         double m) {
  const CampbellMoments mom = campbell_moments(p, g, region, m);
  if (!(mom.mean > 0) || !(mom.variance > 0))
    throw std::invalid_argument("gamma fit needs positive density and region width");
  GammaApprox ga;
  ga.shape = mom.mean * mom.mean / mom.variance;
  ga.scale = mom.variance / mom.mean;
  ga.region = region;
  if (ga.shape > 1e9) throw NumericError("gamma shape overflows practical range");
  ga.shape_floor = static_cast<int>(std::floor(ga.shape));
  ga.shape_ceil = static_cast<int>(std::ceil(ga.shape));
  return ga;
}

double single_sat_laplace(const LaplaceContext& ctx, double s) {
  if (!(s >= 0)) throw std::invalid_argument("laplace argument must be nonnegative");
  if (s == 0) return 1.0;
  const double alpha = ctx.alpha, m = ctx.m, gain = ctx.gain;
  const auto integrand = [&](double r) {
    const double su = s * gain * std::pow(r, -alpha) / m;
    return (r / ctx.pdf_norm) * std::exp(-m * std::log1p(su));
  };
  const QuadratureResult q = integrate_adaptive(integrand, ctx.r_lo, ctx.r_hi);
  return std::min(1.0, q.value);
}

namespace {

// 2F1-difference kernel shared by the m = 1 closed forms; equals rho(s) at
// n = 0 and |y_n| / (lambda |area|) at n >= 1.
//
// For n >= 1 the two 2F1 pieces share their large-argument leading term, so
// the difference as written cancels catastrophically once s is small. The
// same quantity is the integral of t^{p-1} (1+t)^{-(n+1)} over t in
// [r_lo^a, r_hi^a]/(sg), i.e. an incomplete-beta mass with parameters
// p = 1 + 2/alpha, q = n - 2/alpha; evaluating both endpoints from the same
// side of the beta keeps the difference additive at any s.
double hyp_kernel_m1(const LaplaceContext& ctx, int n, double s) {
  const double alpha = ctx.alpha, sg = s * ctx.gain;
  if (n == 0) {
    const double b = 1 + 2 / alpha, c = 2 + 2 / alpha;
    const auto piece = [&](double r) {
      return std::pow(r, 2 + alpha) * gauss_2f1(1, b, c, -std::pow(r, alpha) / sg);
    };
    return (piece(ctx.r_hi) - piece(ctx.r_lo)) / (ctx.pdf_norm * alpha * b * sg);
  }
  const double p = 1 + 2 / alpha, q = n - 2 / alpha;
  const double t_lo = std::pow(ctx.r_lo, alpha) / sg;
  const double t_hi = std::pow(ctx.r_hi, alpha) / sg;
  const double x_lo = t_lo / (1 + t_lo), x_hi = t_hi / (1 + t_hi);
  const double y_lo = 1 / (1 + t_lo), y_hi = 1 / (1 + t_hi);
  double diff;
  if (x_hi < (p + 1) / (p + q + 2))
    diff = inc_beta_reg(p, q, x_hi) - inc_beta_reg(p, q, x_lo);
  else if (y_lo < (q + 1) / (p + q + 2))
    diff = inc_beta_reg(q, p, y_lo) - inc_beta_reg(q, p, y_hi);
  else
    diff = inc_beta_reg(p, q, x_hi) - inc_beta_reg(p, q, x_lo);
  const double lmass = std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q) +
                       (2 / alpha) * std::log(sg);
  return std::exp(lmass) * std::max(0.0, diff) / (alpha * ctx.pdf_norm);
}

}  // namespace

double single_sat_laplace_closed_m1(const LaplaceContext& ctx, double s) {
  if (!(s > 0)) throw std::invalid_argument("closed form needs s > 0");
  if (ctx.m != 1.0) throw std::invalid_argument("closed form holds for m = 1 only");
  return std::min(1.0, hyp_kernel_m1(ctx, 0, s));
}

double laplace(const LaplaceContext& ctx, double s) {
  const double rho = single_sat_laplace(ctx, s);
  return std::exp(-ctx.lambda * ctx.area_km2 * (1.0 - rho));
}

double log_laplace_derivative_scaled(const LaplaceContext& ctx, int n, double s) {
  if (n < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (!(s > 0)) throw std::invalid_argument("derivative needs s > 0");
  if (n == 0) return std::log(laplace(ctx, s));
  const double mag = scaled_log_derivative_magnitude(ctx, n, s);
  return (n % 2 == 0) ? mag : -mag;
}

double log_laplace_derivative_scaled_m1(const LaplaceContext& ctx, int n, double s) {
  if (ctx.m != 1.0) throw std::invalid_argument("closed form holds for m = 1 only");
  if (!(s > 0)) throw std::invalid_argument("derivative needs s > 0");
  if (n < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const double kern = hyp_kernel_m1(ctx, n, s);
  if (n == 0)  // y_0 = log L(s)
    return -ctx.lambda * ctx.area_km2 * (1.0 - std::min(1.0, kern));
  const double y = ctx.lambda * ctx.area_km2 * kern;
  return (n % 2 == 0) ? y : -y;
}

double log_laplace_derivative(const LaplaceContext& ctx, int n, double s,
                              int order_cap) {
  if (n < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (n > order_cap)
    throw NumericError("log-laplace derivative order " + std::to_string(n) +
                       " exceeds cap " + std::to_string(order_cap));
  if (!(s > 0)) throw std::invalid_argument("derivative needs s > 0");
  const double mag = scaled_log_derivative_magnitude(ctx, n, s);
  if (mag == 0) return 0.0;
  const double v = std::exp(std::lgamma(n + 1.0) - n * std::log(s) + std::log(mag));
  return (n % 2 == 0) ? v : -v;
}

double laplace_derivative(const LaplaceContext& ctx, int n, double s, int order_cap) {
  if (n < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (n == 0) return laplace(ctx, s);
  if (n > order_cap)
    throw NumericError("laplace derivative order " + std::to_string(n) +
                       " exceeds cap " + std::to_string(order_cap));
  std::vector<double> x(n);
  for (int i = 1; i <= n; ++i) x[i - 1] = log_laplace_derivative(ctx, i, s, order_cap);
  const double big_l = laplace(ctx, s);
  KahanSum acc;
  for (int q = 1; q <= n; ++q)
    acc.add(bell_incomplete(n, q, std::span<const double>(x.data(), n - q + 1)));
  return big_l * acc.value();
}

std::vector<double> scaled_ccdf_terms(const LaplaceContext& ctx, double s, int count) {
  if (count < 1) throw std::invalid_argument("term count must be >= 1");
  if (!(s > 0)) throw std::invalid_argument("series needs s > 0");
  return ccdf_terms_from_magnitudes(ctx, s, count);
}

BoundResult coverage_bounds_theorem1(const SystemParams& p, const ClusterGeometry& g,
                                     double m, double gamma_lin, int order_cap,
                                     std::optional<double> shape_override) {
  if (!(gamma_lin > 0) || !std::isfinite(gamma_lin))
    throw std::invalid_argument("threshold must be positive and finite");
  const GammaApprox gi = gamma_params(p, g, Region::interference, m);
  const double k = shape_override.value_or(gi.shape);
  check_order_cap(k, order_cap, 1);
  const int k_floor = static_cast<int>(std::floor(k));
  const int k_ceil = static_cast<int>(std::ceil(k));

  const LaplaceContext ctx = LaplaceContext::make(p, g, Region::cluster, m);
  const double s = 1.0 / (gamma_lin * gi.scale);
  const std::vector<double> terms = scaled_ccdf_terms(ctx, s, std::max(k_ceil, 1));
  const SeriesBounds sums = partial_sums(terms, k_floor, k_ceil);

  BoundResult out;
  out.gamma_lin = gamma_lin;
  out.theorem = 1;
  out.order_used = std::max(k_ceil - 1, 0);
  out.lower = clamp01(1.0 - sums.at_ceil);
  out.upper = k_floor == 0 ? 1.0 : clamp01(1.0 - sums.at_floor);
  out.heuristic = coverage_heuristic(out.upper, out.lower, k);
  out.term_magnitudes = terms;
  return out;
}

BoundResult coverage_bounds_theorem2(const SystemParams& p, const ClusterGeometry& g,
                                     double m, double gamma_lin, int order_cap,
                                     std::optional<double> shape_override) {
  if (!(gamma_lin > 0) || !std::isfinite(gamma_lin))
    throw std::invalid_argument("threshold must be positive and finite");
  const GammaApprox gd = gamma_params(p, g, Region::cluster, m);
  const double k = shape_override.value_or(gd.shape);
  check_order_cap(k, order_cap, 2);
  const int k_floor = static_cast<int>(std::floor(k));
  const int k_ceil = static_cast<int>(std::ceil(k));

  const LaplaceContext ctx = LaplaceContext::make(p, g, Region::interference, m);
  const double s = gamma_lin / gd.scale;
  const std::vector<double> terms = scaled_ccdf_terms(ctx, s, std::max(k_ceil, 1));
  const SeriesBounds sums = partial_sums(terms, k_floor, k_ceil);

  BoundResult out;
  out.gamma_lin = gamma_lin;
  out.theorem = 2;
  out.order_used = std::max(k_ceil - 1, 0);
  out.lower_defined = k_floor >= 1;
  out.lower = out.lower_defined ? sums.at_floor : 0.0;
  out.upper = sums.at_ceil;
  out.heuristic = coverage_heuristic(out.lower, out.upper, k);
  out.term_magnitudes = terms;
  return out;
}

double coverage_heuristic(double bound_at_floor, double bound_at_ceil, double k) {
  if (!(k > 0)) throw std::invalid_argument("shape must be positive");
  const double kf = std::floor(k), kc = std::ceil(k);
  if (kf == kc) return bound_at_floor;
  return (kc - k) * bound_at_floor + (k - kf) * bound_at_ceil;
}

double spectral_efficiency(std::span<const double> gamma_lin,
                           std::span<const double> pcov, double cost_c) {
  if (gamma_lin.size() != pcov.size() || gamma_lin.size() < 2)
    throw std::invalid_argument("need matching threshold/coverage grids (>= 2 points)");
  if (!(cost_c >= 0) || !(cost_c <= 1))
    throw std::invalid_argument("cost fraction must lie in [0, 1]");
  constexpr double kLn2 = std::numbers::ln2;
  constexpr double kTailCut = 1e-6;

  const auto integrand = [&](std::size_t i) {
    return pcov[i] / ((1.0 + gamma_lin[i]) * kLn2);
  };
  KahanSum acc;
  for (std::size_t i = 0; i + 1 < gamma_lin.size(); ++i) {
    if (!(gamma_lin[i + 1] > gamma_lin[i]))
      throw std::invalid_argument("thresholds must increase strictly");
    if (pcov[i] < -1e-9 || pcov[i] > 1 + 1e-9)
      throw std::invalid_argument("coverage values must lie in [0, 1]");
    acc.add(0.5 * (integrand(i) + integrand(i + 1)) *
            (gamma_lin[i + 1] - gamma_lin[i]));
  }
  if (!(gamma_lin.front() >= 0))
    throw std::invalid_argument("thresholds must be nonnegative");
  // head: coverage treated as flat below the first grid point
  acc.add(pcov.front() * std::log1p(gamma_lin.front()) / kLn2);

  const std::size_t last = gamma_lin.size() - 1;
  const double f_end = integrand(last);
  if (f_end >= kTailCut) {
    const double gamma_needed = pcov[last] / (kTailCut * kLn2) - 1.0;
    throw NumericError(
        "coverage grid ends while the rate integrand is still " +
            std::to_string(f_end) + "; extend thresholds to about " +
            std::to_string(gamma_needed) + " (linear)",
        (1.0 - cost_c) * acc.value());
  }
  // residual tail, frozen-coverage bound truncated where it drops below the cut
  if (pcov[last] > 0) {
    const double gamma_end = pcov[last] / (kTailCut * kLn2) - 1.0;
    if (gamma_end > gamma_lin[last])
      acc.add(pcov[last] * std::log((1.0 + gamma_end) / (1.0 + gamma_lin[last])) / kLn2);
  }
  return (1.0 - cost_c) * acc.value();
}

SensitivityResult sensitivity(const SystemParams& p, const ClusterGeometry& g, double m,
                              SensitivityKind kind, Region region) {
  if (!(m >= 0.5)) throw std::invalid_argument("nakagami m must be >= 0.5");
  const bool wrt_range = kind == SensitivityKind::shape_wrt_cluster_range ||
                         kind == SensitivityKind::scale_wrt_cluster_range;
  if (wrt_range && region != Region::cluster)
    throw std::invalid_argument(
        "cluster-range sensitivities are defined for the cluster region");
  const double alpha = p.path_loss_exponent;
  const double gain = region == Region::cluster ? p.gain_inside : p.gain_outside;
  const double lo = region == Region::cluster ? g.r_min_km : g.r_clu_km;
  const double hi = region == Region::cluster ? g.r_clu_km : g.r_max_km;
  const double base =
      kTwoPi * p.sat_density_per_km2 * p.sat_orbit_radius_km / p.earth_radius_km;

  SensitivityResult out;
  if (hi - lo <= 1e-9 * lo) {
    out.at_boundary = true;
    switch (kind) {
      case SensitivityKind::shape_wrt_cluster_range:
        out.value = base / (1 + 1 / m) * lo;
        break;
      case SensitivityKind::scale_wrt_cluster_range:
        out.value = -(1 + 1 / m) * gain * alpha * std::pow(lo, -1 - alpha) / 2;
        break;
      case SensitivityKind::shape_wrt_m:
        out.value = 0.0;
        break;
      case SensitivityKind::scale_wrt_m:
        out.value = -gain * std::pow(lo, -alpha) / (m * m);
        break;
    }
    return out;
  }

  const double pdiff = std::pow(lo, 2 - alpha) - std::pow(hi, 2 - alpha);
  const double qdiff = std::pow(lo, 2 - 2 * alpha) - std::pow(hi, 2 - 2 * alpha);
  switch (kind) {
    case SensitivityKind::shape_wrt_cluster_range: {
      const double k0 = 2 * base * (alpha - 1) /
                        ((alpha - 2) * (alpha - 2) * (1 + 1 / m));
      const double x = std::pow(hi, 2 - alpha) +
                       (alpha - 2) * std::pow(hi, alpha) * std::pow(lo, 2 - 2 * alpha) -
                       (alpha - 1) * std::pow(lo, 2 - alpha);
      out.value = 2 * k0 * std::pow(hi, 1 - 2 * alpha) * pdiff * x / (qdiff * qdiff);
      break;
    }
    case SensitivityKind::scale_wrt_cluster_range: {
      const double t0 = (alpha - 2) * (1 + 1 / m) / (2 * (alpha - 1));
      const double y = (2 * alpha - 2) * std::pow(hi, -alpha) * std::pow(lo, 2 - alpha) -
                       alpha * std::pow(hi, 2 - 2 * alpha) -
                       (alpha - 2) * std::pow(lo, 2 - 2 * alpha);
      out.value = t0 * gain * std::pow(hi, 1 - alpha) * y / (pdiff * pdiff);
      break;
    }
    case SensitivityKind::shape_wrt_m: {
      const double k0 = 2 * base * (alpha - 1) / ((alpha - 2) * (alpha - 2));
      out.value =
          k0 * pdiff * pdiff / qdiff / (m * m * (1 + 1 / m) * (1 + 1 / m));
      break;
    }
    case SensitivityKind::scale_wrt_m:
      out.value = -(alpha - 2) * gain * qdiff / (2 * (alpha - 1) * pdiff * m * m);
      break;
  }
  return out;
}

}  // namespace satcov
