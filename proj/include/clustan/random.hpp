#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace clustan {

using Rng = std::mt19937_64;

/// Independent stream for the index-th trial/restart of a seeded run.
inline Rng substream(std::uint64_t seed, std::uint64_t index) { return Rng(seed + index); }

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound), bound > 0; rejection sampling keeps it unbiased.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// m distinct indices from [0, n) in draw order (partial Fisher-Yates).
inline std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  return pool;
}

}  // namespace clustan
