#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "satcov/rng.hpp"

using namespace satcov;

TEST_CASE("philox known-answer vectors") {
  // Reference vectors for philox4x32-10 (counter, key -> output).
  using Block = Philox4x32::Block;
  const Block zero = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const Block ones = Philox4x32::block(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const Block pi = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                     {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("stream layout and determinism") {
  // identical (seed, stream) pairs replay the same sequence
  Philox4x32 a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next32() == b.next32());

  // first block of stream 0 equals the raw block with counter zero
  Philox4x32 c(0xdeadbeefcafef00dull);
  const auto want = Philox4x32::block(
      {0, 0, 0, 0}, {0xcafef00du, 0xdeadbeefu});
  for (int i = 0; i < 4; ++i) CHECK(c.next32() == want[i]);

  // stream index occupies the high counter words
  Philox4x32 d(1, 0x0123456789abcdefull);
  const auto want2 = Philox4x32::block({0, 0, 0x89abcdefu, 0x01234567u}, {1, 0});
  for (int i = 0; i < 4; ++i) CHECK(d.next32() == want2[i]);
}

TEST_CASE("substreams do not collide") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 64; ++stream) {
    Philox4x32 g(9001, stream);
    for (int i = 0; i < 16; ++i) seen.insert(g.next64());
  }
  CHECK(seen.size() == 64u * 16u);
}

TEST_CASE("uniform range and moments") {
  Philox4x32 g(3);
  const int n = 200000;
  double sum = 0, sum2 = 0, lo = 1, hi = 0;
  for (int i = 0; i < n; ++i) {
    const double u = g.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  // mean 1/2 (sd of estimate ~ 0.00065), var 1/12
  CHECK(std::abs(mean - 0.5) < 0.002);
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);

  Philox4x32 h(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = h.uniform(-2.0, 5.0);
    CHECK(v >= -2.0);
    CHECK(v < 5.0);
  }
}

TEST_CASE("normal moments") {
  Philox4x32 g(11);
  const int n = 400000;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.normal();
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  CHECK(std::abs(s1 / n) < 0.01);            // se ~ 0.0016
  CHECK(std::abs(s2 / n - 1.0) < 0.02);      // se ~ 0.0022
  CHECK(std::abs(s3 / n) < 0.05);
  CHECK(std::abs(s4 / n - 3.0) < 0.1);
}

TEST_CASE("exponential moments") {
  Philox4x32 g(17);
  const int n = 400000;
  double s1 = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = g.exponential();
    CHECK(x >= 0.0);
    s1 += x;
    s2 += x * x;
  }
  CHECK(std::abs(s1 / n - 1.0) < 0.01);
  CHECK(std::abs(s2 / n - 2.0) < 0.05);
}

TEST_CASE("gamma moments across shapes") {
  for (double shape : {0.5, 1.0, 2.0, 7.5}) {
    const double scale = 1.3;
    Philox4x32 g(23);
    const int n = 300000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double x = g.gamma(shape, scale);
      CHECK(x >= 0.0);
      s1 += x;
      s2 += x * x;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    const double se_mean = std::sqrt(shape) * scale / std::sqrt(double(n));
    CHECK(std::abs(mean - shape * scale) < 6.0 * se_mean + 1e-9);
    CHECK(std::abs(var - shape * scale * scale) / (shape * scale * scale) < 0.05);
  }
}
