#pragma once

#include <cstdint>
#include <random>

namespace localpr {

/// Seedable generator with a fixed stream contract.
///
/// Only the raw 64-bit output of std::mt19937_64 (whose sequence the standard
/// pins down) is consumed; all derived draws are computed here rather than by
/// the implementation-defined <random> distributions, so a seed produces the
/// same instance with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform on [0, bound). `bound` must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Number of failures before the first success of a Bernoulli(p) sequence,
  /// 0 < p < 1. Used for skip-sampling sparse edge blocks.
  std::uint64_t geometric_skip(double log1m_p);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent child seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace localpr
