#pragma once

#include <cstdint>

namespace mutkit {

// splitmix64 (Vigna's public-domain mixer). Counter-based: the state advances by
// a fixed odd constant and the output is a bijective finalizer of the state, so
// streams keyed by (seed, draw index) are splittable and reproducible.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-trial seed derivation: hash of (master_seed, trial_index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master + 0x9e3779b97f4a7c15ULL) ^
               (index + 0xbf58476d1ce4e5b9ULL));
}

// Unbiased uniform draw in [0, n) by bounded rejection.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n) {
  const std::uint64_t bound = n * (~std::uint64_t{0} / n);  // largest multiple of n
  for (;;) {
    std::uint64_t r = rng.next();
    if (r < bound) return r % n;
  }
}

}  // namespace mutkit
