#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace satcov {

// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
// independent substream; Monte Carlo code uses stream = trial index so results
// do not depend on how trials are scheduled across threads.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0, 0, static_cast<std::uint32_t>(stream),
             static_cast<std::uint32_t>(stream >> 32)} {}

  // One 10-round block for an explicit counter/key; exposed for known-answer tests.
  static Block block(const Block& counter, const std::array<std::uint32_t, 2>& key);

  std::uint32_t next32() {
    if (idx_ == 4) {
      buf_ = block(ctr_, key_);
      bump_counter();
      idx_ = 0;
    }
    return buf_[idx_++];
  }

  std::uint64_t next64() {
    const std::uint64_t hi = next32();
    return (hi << 32) | next32();
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Box-Muller; draws two values per pair of uniforms.
  double normal();

  double exponential() { return -std::log1p(-uniform()); }

  // Gamma(shape, scale), Marsaglia-Tsang with the shape<1 boost.
  double gamma(double shape, double scale);

 private:
  void bump_counter() {
    if (++ctr_[0] == 0) ++ctr_[1];  // 2^64 blocks per stream
  }

  std::array<std::uint32_t, 2> key_;
  Block ctr_;
  Block buf_{};
  int idx_ = 4;
  double cached_normal_ = 0;
  bool has_cached_normal_ = false;
};

}  // namespace satcov
