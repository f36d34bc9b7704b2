#pragma once

#include <cstdint>
#include <random>

namespace sstab::rng {

// Every seeded run in the tool draws from std::mt19937_64 through these
// helpers, so identical seeds give bit-identical results on any platform.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform draw from [0, n) by rejection; avoids the implementation-defined
// behaviour of std::uniform_int_distribution.
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = gen();
    if (rem == 0 || r <= UINT64_MAX - rem) {
      return r % n;
    }
  }
}

}  // namespace sstab::rng
