#pragma once

#include <cstdint>
#include <random>

namespace linfix {

/// 64-bit Mersenne Twister (std::mt19937_64, whose output sequence the
/// standard fixes) with bounded draws done here rather than through the
/// implementation-defined std:: distributions, so a seed yields the same
/// stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform in [0, 1) with 53 random bits.
  double unit();

 private:
  std::mt19937_64 engine_;
};

}  // namespace linfix
