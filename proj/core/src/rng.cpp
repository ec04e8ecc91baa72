#include "localpr/rng.hpp"

#include <cmath>
#include <limits>

namespace localpr {

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  // Lemire's nearly-divisionless method with rejection.
  std::uint64_t x = engine_();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::geometric_skip(double log1m_p) {
  const double u = uniform();
  const double skip = std::floor(std::log1p(-u) / log1m_p);
  if (!(skip < 9.0e18)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(skip);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace localpr
