#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "satcov/channel.hpp"
#include "satcov/geometry.hpp"
#include "satcov/pointprocess.hpp"
#include "satcov/stats.hpp"

namespace satcov {

enum class ServeMode { cluster, nearest };

struct Snapshot {
  double d_power = 0;  // gain * km^-alpha units
  double i_power = 0;
  double sir = 0;      // d/i; 0 when d = 0, +inf when i = 0 < d
};

struct FadeSpec {
  enum class Kind { nakagami, shadowed_rician };
  Kind kind = Kind::nakagami;
  double m = 1.0;
  ShadowedRicianParams sr{};

  static FadeSpec nakagami(double m) { return {Kind::nakagami, m, {}}; }
  static FadeSpec shadowed_rician(const ShadowedRicianParams& sr) {
    return {Kind::shadowed_rician, 1.0, sr};
  }
  double sample(Philox4x32& rng) const;
};

struct CoveragePoint {
  double gamma_db = 0;
  double estimate = 0;           // raw fraction covered
  double ci95_halfwidth = 0;     // Wilson
  std::uint64_t n_trials = 0;
};

struct CoverageCurve {
  std::vector<CoveragePoint> points;
  ServeMode mode = ServeMode::cluster;
};

// Accumulated powers and SIR of one constellation realization.
Snapshot simulate_snapshot(const SystemParams& p, const ClusterGeometry& g,
                           Philox4x32& rng, ServeMode mode, const FadeSpec& fade);

// Deterministic core of the snapshot: powers from explicit (distance, fade)
// lists; serving set already resolved by the caller.
Snapshot snapshot_from_components(const SystemParams& p,
                                  std::span<const double> serving_distances,
                                  std::span<const double> serving_fades,
                                  std::span<const double> interferer_distances,
                                  std::span<const double> interferer_fades);

// trials independent snapshots; trial t uses RNG substream (seed, t). The
// result vector is indexed by trial, identical for any worker count.
std::vector<Snapshot> run_snapshots(const SystemParams& p, const ClusterGeometry& g,
                                    ServeMode mode, const FadeSpec& fade,
                                    std::uint64_t trials, std::uint64_t seed);

CoverageCurve coverage_from_snapshots(std::span<const Snapshot> snaps,
                                      std::span<const double> thresholds_db,
                                      ServeMode mode);

CoverageCurve estimate_coverage(const SystemParams& p, const ClusterGeometry& g,
                                ServeMode mode, std::uint64_t trials);
CoverageCurve estimate_coverage(const SystemParams& p, const ClusterGeometry& g,
                                ServeMode mode, std::uint64_t trials,
                                const FadeSpec& fade, std::uint64_t seed);

// Per-trial accumulated power of one region (D for cluster, I for interference).
std::vector<double> sample_region_power(const SystemParams& p, const ClusterGeometry& g,
                                        Region region, const FadeSpec& fade,
                                        std::uint64_t trials, std::uint64_t seed);

struct DerivativeEstimate {
  double value = 0;
  double se = 0;
};

// Sample mean of X^n e^{-sX}; equals (-1)^n L_X^{(n)}(s).
DerivativeEstimate mc_laplace_derivative(std::span<const double> samples, int n,
                                         double s);

// Monte Carlo of E[log2(1+SIR)] * (1 - cost_c), the spectral-efficiency oracle.
DerivativeEstimate mc_spectral_efficiency(std::span<const Snapshot> snaps,
                                           double cost_c);

// CSV dump, columns trial,d_power,i_power,sir at 17 significant digits.
void dump_samples_csv(std::ostream& os, std::span<const Snapshot> snaps);

}  // namespace satcov
