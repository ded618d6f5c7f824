#pragma once

#include <cstdint>
#include <random>

namespace bbg {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). Rejection sampling on the raw engine
/// output keeps draw sequences identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace bbg
