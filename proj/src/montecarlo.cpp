#include "satcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "satcov/csv.hpp"
#include "satcov/specialfns.hpp"
#include "satcov/threads.hpp"

namespace satcov {

double FadeSpec::sample(Philox4x32& rng) const {
  if (kind == Kind::nakagami) return sample_nakagami_power(m, rng);
  return sample_shadowed_rician_power(sr, rng);
}

namespace {

double sir_of(double d, double i) {
  if (d <= 0) return 0.0;
  if (i <= 0) return std::numeric_limits<double>::infinity();
  return d / i;
}

}  // namespace

Snapshot snapshot_from_components(const SystemParams& p,
                                  std::span<const double> serving_distances,
                                  std::span<const double> serving_fades,
                                  std::span<const double> interferer_distances,
                                  std::span<const double> interferer_fades) {
  if (serving_distances.size() != serving_fades.size() ||
      interferer_distances.size() != interferer_fades.size())
    throw std::invalid_argument("distance and fade lists must pair up");
  const double alpha = p.path_loss_exponent;
  Snapshot s;
  for (std::size_t i = 0; i < serving_distances.size(); ++i)
    s.d_power += p.gain_inside * serving_fades[i] * std::pow(serving_distances[i], -alpha);
  for (std::size_t i = 0; i < interferer_distances.size(); ++i)
    s.i_power +=
        p.gain_outside * interferer_fades[i] * std::pow(interferer_distances[i], -alpha);
  s.sir = sir_of(s.d_power, s.i_power);
  return s;
}

Snapshot simulate_snapshot(const SystemParams& p, const ClusterGeometry& g,
                           Philox4x32& rng, ServeMode mode, const FadeSpec& fade) {
  const Constellation c = sample_constellation(p, g, rng);
  const double alpha = p.path_loss_exponent;
  Snapshot s;
  if (mode == ServeMode::cluster) {
    for (const auto& sat : c.cluster)
      s.d_power += p.gain_inside * fade.sample(rng) *
                   std::pow(sat.distance_to_user_km, -alpha);
    for (const auto& sat : c.outside)
      s.i_power += p.gain_outside * fade.sample(rng) *
                   std::pow(sat.distance_to_user_km, -alpha);
  } else {
    // nearest visible satellite serves with main-lobe gain; every other
    // visible satellite interferes with side-lobe gain
    const SatelliteSample* nearest = nullptr;
    for (const auto& sat : c.cluster)
      if (!nearest || sat.distance_to_user_km < nearest->distance_to_user_km)
        nearest = &sat;
    for (const auto& sat : c.outside)
      if (!nearest || sat.distance_to_user_km < nearest->distance_to_user_km)
        nearest = &sat;
    auto absorb = [&](const SatelliteSample& sat) {
      const double h = fade.sample(rng);
      const double pl = std::pow(sat.distance_to_user_km, -alpha);
      if (&sat == nearest)
        s.d_power += p.gain_inside * h * pl;
      else
        s.i_power += p.gain_outside * h * pl;
    };
    for (const auto& sat : c.cluster) absorb(sat);
    for (const auto& sat : c.outside) absorb(sat);
  }
  s.sir = sir_of(s.d_power, s.i_power);
  return s;
}

std::vector<Snapshot> run_snapshots(const SystemParams& p, const ClusterGeometry& g,
                                    ServeMode mode, const FadeSpec& fade,
                                    std::uint64_t trials, std::uint64_t seed) {
  std::vector<Snapshot> out(trials);
  parallel_chunks(trials, 1024, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      Philox4x32 rng(seed, t);
      out[t] = simulate_snapshot(p, g, rng, mode, fade);
    }
  });
  return out;
}

CoverageCurve coverage_from_snapshots(std::span<const Snapshot> snaps,
                                      std::span<const double> thresholds_db,
                                      ServeMode mode) {
  if (snaps.empty()) throw std::invalid_argument("no snapshots");
  CoverageCurve curve;
  curve.mode = mode;
  curve.points.reserve(thresholds_db.size());
  for (double db : thresholds_db) {
    const double glin = db_to_linear(db);
    std::uint64_t covered = 0;
    for (const auto& s : snaps)
      if (s.sir >= glin) ++covered;
    CoveragePoint pt;
    pt.gamma_db = db;
    pt.n_trials = snaps.size();
    pt.estimate = static_cast<double>(covered) / static_cast<double>(snaps.size());
    pt.ci95_halfwidth = wilson_interval(covered, snaps.size()).halfwidth;
    curve.points.push_back(pt);
  }
  return curve;
}

CoverageCurve estimate_coverage(const SystemParams& p, const ClusterGeometry& g,
                                ServeMode mode, std::uint64_t trials,
                                const FadeSpec& fade, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const auto snaps = run_snapshots(p, g, mode, fade, trials, seed);
  const std::vector<double> grid =
      p.sir_thresholds_db.empty() ? default_thresholds_db() : p.sir_thresholds_db;
  return coverage_from_snapshots(snaps, grid, mode);
}

CoverageCurve estimate_coverage(const SystemParams& p, const ClusterGeometry& g,
                                ServeMode mode, std::uint64_t trials) {
  return estimate_coverage(p, g, mode, trials, FadeSpec::nakagami(p.nakagami_m),
                           p.rng_seed);
}

std::vector<double> sample_region_power(const SystemParams& p, const ClusterGeometry& g,
                                        Region region, const FadeSpec& fade,
                                        std::uint64_t trials, std::uint64_t seed) {
  const double area =
      region == Region::cluster ? g.cluster_area_km2 : g.outside_area_km2;
  const double gain = region == Region::cluster ? p.gain_inside : p.gain_outside;
  const double lo = region == Region::cluster ? g.r_min_km : g.r_clu_km;
  const double hi = region == Region::cluster ? g.r_clu_km : g.r_max_km;
  const double alpha = p.path_loss_exponent;
  const double rate = p.sat_density_per_km2 * area;

  std::vector<double> out(trials);
  parallel_chunks(trials, 1024, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      Philox4x32 rng(seed, t);
      const std::uint64_t n = sample_count(rate, rng);
      double acc = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        // distance law r ~ r/norm on [lo, hi]: inverse-CDF of r^2 uniform
        const double u = rng.uniform();
        const double r = std::sqrt(lo * lo + u * (hi * hi - lo * lo));
        acc += gain * fade.sample(rng) * std::pow(r, -alpha);
      }
      out[t] = acc;
    }
  });
  return out;
}

DerivativeEstimate mc_laplace_derivative(std::span<const double> samples, int n,
                                         double s) {
  if (n < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (!(s > 0)) throw std::invalid_argument("transform point must be positive");
  if (samples.empty()) throw std::invalid_argument("no samples");
  KahanSum acc, acc2;
  for (double x : samples) {
    const double v = (n == 0 ? 1.0 : std::pow(x, n)) * std::exp(-s * x);
    acc.add(v);
    acc2.add(v * v);
  }
  const double nn = static_cast<double>(samples.size());
  DerivativeEstimate e;
  e.value = acc.value() / nn;
  const double var = std::max(0.0, acc2.value() / nn - e.value * e.value);
  e.se = std::sqrt(var / nn);
  return e;
}

DerivativeEstimate mc_spectral_efficiency(std::span<const Snapshot> snaps,
                                           double cost_c) {
  if (snaps.empty()) throw std::invalid_argument("no snapshots");
  if (cost_c < 0 || cost_c > 1) throw std::invalid_argument("cost share must be in [0,1]");
  KahanSum acc, acc2;
  for (const auto& s : snaps) {
    if (std::isinf(s.sir))
      throw std::invalid_argument(
          "snapshot with empty interference set has unbounded rate");
    const double v = std::log2(1.0 + s.sir);
    acc.add(v);
    acc2.add(v * v);
  }
  const double nn = static_cast<double>(snaps.size());
  DerivativeEstimate e;
  e.value = (1.0 - cost_c) * acc.value() / nn;
  const double mean = acc.value() / nn;
  const double var = std::max(0.0, acc2.value() / nn - mean * mean);
  e.se = (1.0 - cost_c) * std::sqrt(var / nn);
  return e;
}

void dump_samples_csv(std::ostream& os, std::span<const Snapshot> snaps) {
  os << "trial,d_power,i_power,sir\n";
  for (std::size_t t = 0; t < snaps.size(); ++t) {
    os << t << ',' << csv_double(snaps[t].d_power) << ',' << csv_double(snaps[t].i_power)
       << ',' << csv_double(snaps[t].sir) << '\n';
  }
}

}  // namespace satcov
