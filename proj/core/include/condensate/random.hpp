#pragma once

#include <cstdint>
#include <random>

namespace condensate {

// Independent generator for sample `index` of a run seeded with `seed`, so
// results do not depend on how samples are scheduled.
inline std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace condensate
