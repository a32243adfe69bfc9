#pragma once

#include <cstdint>
#include <random>

namespace nbcrw {

/// Engine behind every seeded computation. Per-stream seeds come from
/// SplitMix64 so that stream k depends only on (seed, k).
using Rng = std::mt19937_64;

inline constexpr const char* kRngAlgorithm = "mt19937_64+splitmix64-streams";
inline constexpr int kRngVersion = 1;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed,
                                 std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(stream_seed(seed, stream));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// platform, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) noexcept {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace nbcrw
