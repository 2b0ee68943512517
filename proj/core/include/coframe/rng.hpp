#pragma once

#include <cstdint>
#include <random>

namespace coframe {

/// Deterministic uniform sampler. mt19937_64 has a standard-specified output
/// sequence and the [0,1) mapping below avoids std::uniform_real_distribution,
/// whose output is implementation-defined; results are bit-identical across
/// platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace coframe
