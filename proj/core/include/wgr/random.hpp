#pragma once

#include <cstdint>
#include <random>

namespace wgr {

// Deterministic value mappings over std::mt19937_64. The standard library's
// distribution objects are implementation-defined, so replaying a seed
// through them is not stable across library versions; these one-liners are.

inline double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  return std::uint64_t((unsigned __int128)rng() * n >> 64);  // [0, n)
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
  return uniform01(rng) < p;
}

// Derives an independent stream for a sub-task without disturbing the
// parent seed arithmetic.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace wgr
