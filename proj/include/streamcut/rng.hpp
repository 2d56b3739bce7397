#pragma once

#include <cstdint>
#include <random>

namespace streamcut {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based hash of (seed, a, b): the same triple always yields the same
// 64 random bits, so sketch matrices are regenerated instead of stored.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ (b * 0xd6e8feb86659fd93ULL));
}

// Derive an independent child seed for a named purpose.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return counter_hash(seed, tag, 0x5eedULL);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t tag = 0) {
  return Rng(derive_seed(seed, tag));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace streamcut
