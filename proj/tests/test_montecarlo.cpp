#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "satcov/montecarlo.hpp"
#include "satcov/stats.hpp"
#include "satcov/threads.hpp"
#include "test_util.hpp"

using namespace satcov;
using testutil::rel_err;
using testutil::split_lines;

namespace {

SystemParams scenario(double sats_in_dome) {
  SystemParams p;
  p.sat_density_per_km2 = sats_in_dome / dome_area(p);
  return p;
}

}  // namespace

TEST_CASE("snapshot powers from explicit components") {
  SystemParams p;  // gain_inside 1, gain_outside 0.1, alpha 3
  const std::vector<double> sd = {533.0}, sf = {2.0};
  const std::vector<double> id = {1000.0}, iff = {2.0};
  const Snapshot s = snapshot_from_components(p, sd, sf, id, iff);
  CHECK(rel_err(s.d_power, 2.0 * std::pow(533.0, -3.0)) < 1e-14);
  CHECK(rel_err(s.i_power, 0.2 * std::pow(1000.0, -3.0)) < 1e-14);
  CHECK(rel_err(s.sir, 10.0 * std::pow(1000.0 / 533.0, 3.0)) < 1e-12);
}

TEST_CASE("snapshot SIR conventions at the edges") {
  SystemParams p;
  const std::vector<double> none;
  const std::vector<double> d1 = {700.0}, f1 = {1.0};
  const Snapshot silent = snapshot_from_components(p, none, none, d1, f1);
  CHECK(silent.d_power == 0.0);
  CHECK(silent.sir == 0.0);
  const Snapshot clean = snapshot_from_components(p, d1, f1, none, none);
  CHECK(clean.i_power == 0.0);
  CHECK(std::isinf(clean.sir));
  const Snapshot empty = snapshot_from_components(p, none, none, none, none);
  CHECK(empty.sir == 0.0);  // no server wins over no interferer
  const std::vector<double> mismatched = {1.0, 2.0};
  CHECK_THROWS_AS(snapshot_from_components(p, d1, mismatched, none, none),
                  std::invalid_argument);
}

TEST_CASE("SIR is invariant under a common gain rescale") {
  SystemParams a;
  SystemParams b;
  b.gain_inside = 7.0 * a.gain_inside;
  b.gain_outside = 7.0 * a.gain_outside;
  const std::vector<double> sd = {600.0, 800.0}, sf = {1.2, 0.4};
  const std::vector<double> id = {900.0, 1010.0, 950.0}, iff = {0.9, 2.1, 0.3};
  const Snapshot sa = snapshot_from_components(a, sd, sf, id, iff);
  const Snapshot sb = snapshot_from_components(b, sd, sf, id, iff);
  CHECK(rel_err(sb.sir, sa.sir) < 1e-14);
  CHECK(rel_err(sb.d_power, 7.0 * sa.d_power) < 1e-14);
}

TEST_CASE("snapshot runs are reproducible for any worker count") {
  SystemParams p = scenario(300.0);
  const ClusterGeometry g = make_cluster_geometry(p);
  const FadeSpec fade = FadeSpec::nakagami(2.0);
  std::vector<std::vector<Snapshot>> runs;
  for (int workers : {1, 4, 16}) {
    set_thread_count(workers);
    runs.push_back(run_snapshots(p, g, ServeMode::cluster, fade, 3000, 99));
  }
  set_thread_count(-1);
  for (std::size_t k = 1; k < runs.size(); ++k) {
    REQUIRE(runs[k].size() == runs[0].size());
    for (std::size_t t = 0; t < runs[0].size(); ++t) {
      CHECK(runs[k][t].d_power == runs[0][t].d_power);
      CHECK(runs[k][t].i_power == runs[0][t].i_power);
      CHECK(runs[k][t].sir == runs[0][t].sir);
    }
  }
}

TEST_CASE("each trial replays its own substream") {
  SystemParams p = scenario(50.0);
  const ClusterGeometry g = make_cluster_geometry(p);
  const FadeSpec fade = FadeSpec::nakagami(2.0);
  const auto batch = run_snapshots(p, g, ServeMode::nearest, fade, 16, 1234);
  for (std::uint64_t t = 0; t < batch.size(); ++t) {
    Philox4x32 rng(1234, t);
    const Snapshot s = simulate_snapshot(p, g, rng, ServeMode::nearest, fade);
    CHECK(s.d_power == batch[t].d_power);
    CHECK(s.i_power == batch[t].i_power);
  }
}

TEST_CASE("coverage from hand-built snapshots") {
  std::vector<Snapshot> snaps(4);
  snaps[0].sir = 0.5;
  snaps[1].sir = 1.0;
  snaps[2].sir = 2.0;
  snaps[3].sir = std::numeric_limits<double>::infinity();
  const std::vector<double> grid = {0.0};  // 1.0 linear
  const CoverageCurve c = coverage_from_snapshots(snaps, grid, ServeMode::cluster);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0].estimate == 0.75);
  CHECK(c.points[0].n_trials == 4);
  CHECK(c.points[0].gamma_db == 0.0);
  CHECK(c.points[0].ci95_halfwidth ==
        doctest::Approx(wilson_interval(3, 4).halfwidth).epsilon(1e-15));
  CHECK(c.mode == ServeMode::cluster);
  const std::vector<Snapshot> nothing;
  CHECK_THROWS_AS(coverage_from_snapshots(nothing, grid, ServeMode::cluster),
                  std::invalid_argument);
}

TEST_CASE("coverage decreases with the threshold and hits the void limit") {
  SystemParams p = scenario(50.0);
  p.sir_thresholds_db = {-60.0, -10.0, -5.0, 0.0, 5.0, 10.0};
  const ClusterGeometry g = make_cluster_geometry(p);
  const CoverageCurve c = estimate_coverage(p, g, ServeMode::cluster, 100000);
  for (std::size_t i = 1; i < c.points.size(); ++i)
    CHECK(c.points[i].estimate <= c.points[i - 1].estimate);
  // at a vanishing threshold only an empty cluster fails
  const double rate = p.sat_density_per_km2 * g.cluster_area_km2;
  const double want = 1.0 - std::exp(-rate);
  const double se = std::sqrt(want * (1.0 - want) / 100000.0);
  CHECK(std::abs(c.points[0].estimate - want) < 4.0 * se);
  CHECK_THROWS_AS(estimate_coverage(p, g, ServeMode::cluster, 0), std::invalid_argument);
}

TEST_CASE("region power sums match campbell moments") {
  SystemParams p = scenario(300.0);
  const ClusterGeometry g = make_cluster_geometry(p);
  const double alpha = p.path_loss_exponent;
  const FadeSpec fade = FadeSpec::nakagami(2.0);
  for (Region region : {Region::cluster, Region::interference}) {
    const double lo = region == Region::cluster ? g.r_min_km : g.r_clu_km;
    const double hi = region == Region::cluster ? g.r_clu_km : g.r_max_km;
    const double area =
        region == Region::cluster ? g.cluster_area_km2 : g.outside_area_km2;
    const double gain = region == Region::cluster ? p.gain_inside : p.gain_outside;
    const double rate = p.sat_density_per_km2 * area;
    // E[r^{-a}] under the linear distance law
    auto rmom = [&](double a) {
      return 2.0 / (hi * hi - lo * lo) * (std::pow(lo, 2.0 - a) - std::pow(hi, 2.0 - a)) /
             (a - 2.0);
    };
    const double want_mean = rate * gain * rmom(alpha);
    const double want_var = rate * gain * gain * 1.5 * rmom(2.0 * alpha);  // E[h^2]=1.5
    const auto powers = sample_region_power(p, g, region, fade, 200000, 4242);
    const MomentStats m = empirical_moments(powers);
    CHECK(std::abs(m.mean - want_mean) < 4.0 * m.se_mean);
    CHECK(std::abs(m.variance - want_var) < 4.0 * m.se_variance);
  }
}

TEST_CASE("laplace derivative estimator on degenerate samples") {
  const std::vector<double> flat(100, 3.0);
  for (int n : {0, 1, 4}) {
    const double s = 0.7;
    const DerivativeEstimate e = mc_laplace_derivative(flat, n, s);
    CHECK(rel_err(e.value, std::pow(3.0, n) * std::exp(-0.7 * 3.0)) < 1e-13);
    // identical samples: spread is pure cancellation residue, far below the
    // value/sqrt(n) scale of any real sample set
    CHECK(e.se < 1e-6 * std::max(1.0, e.value));
  }
  CHECK_THROWS_AS(mc_laplace_derivative(flat, -1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mc_laplace_derivative(flat, 1, 0.0), std::invalid_argument);
  const std::vector<double> none;
  CHECK_THROWS_AS(mc_laplace_derivative(none, 1, 1.0), std::invalid_argument);
}

TEST_CASE("laplace derivative estimator against an exponential closed form") {
  // X ~ Exp(1): E[X^n e^{-sX}] = n! / (1+s)^{n+1}
  Philox4x32 rng(53);
  std::vector<double> x;
  for (int i = 0; i < 300000; ++i) x.push_back(rng.exponential());
  const double s = 0.9;
  for (int n : {0, 1, 2, 3}) {
    const DerivativeEstimate e = mc_laplace_derivative(x, n, s);
    double want = 1.0;
    for (int j = 1; j <= n; ++j) want *= j;
    want /= std::pow(1.0 + s, n + 1.0);
    CHECK(std::abs(e.value - want) < 4.0 * e.se);
    CHECK(e.se > 0.0);
  }
}

TEST_CASE("spectral efficiency estimator") {
  std::vector<Snapshot> snaps(2);
  snaps[0].sir = 1.0;
  snaps[1].sir = 3.0;
  const DerivativeEstimate e = mc_spectral_efficiency(snaps, 0.2);
  CHECK(rel_err(e.value, 0.8 * 1.5) < 1e-14);  // (log2 2 + log2 4)/2 = 1.5
  const DerivativeEstimate zero = mc_spectral_efficiency(snaps, 1.0);
  CHECK(zero.value == 0.0);
  CHECK_THROWS_AS(mc_spectral_efficiency(snaps, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(mc_spectral_efficiency(snaps, 1.1), std::invalid_argument);
  snaps[1].sir = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(mc_spectral_efficiency(snaps, 0.0), std::invalid_argument);
}

TEST_CASE("sample dump format") {
  std::vector<Snapshot> snaps(2);
  snaps[0] = {1.5, 0.5, 3.0};
  snaps[1] = {0.0, 0.25, 0.0};
  std::ostringstream os;
  dump_samples_csv(os, snaps);
  const auto lines = split_lines(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "trial,d_power,i_power,sir");
  for (std::size_t row = 1; row <= 2; ++row) {
    std::istringstream ls(lines[row]);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 4);
    CHECK(vals[0] == double(row - 1));
    CHECK(vals[1] == snaps[row - 1].d_power);  // 17 digits round-trip exactly
    CHECK(vals[2] == snaps[row - 1].i_power);
    CHECK(vals[3] == snaps[row - 1].sir);
  }
}

TEST_CASE("fade spec dispatches to the right family") {
  Philox4x32 rng(59);
  const FadeSpec nak = FadeSpec::nakagami(2.0);
  double s = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) s += nak.sample(rng);
  CHECK(std::abs(s / n - 1.0) < 4.0 / std::sqrt(2.0 * n));

  ShadowedRicianParams srp;
  const FadeSpec sr = FadeSpec::shadowed_rician(srp);
  s = 0;
  for (int i = 0; i < n; ++i) s += sr.sample(rng);
  const double want = 2.0 * srp.b0 + srp.omega;
  CHECK(std::abs(s / n - want) < 0.01);
}
