#pragma once

// Splittable deterministic randomness: every block of trials owns a generator
// seeded from (seed, block index), so results do not depend on how blocks are
// spread over threads. Only mt19937_64 raw output is used; the std
// distributions are implementation-defined.

#include <cstdint>
#include <random>

namespace cordic::detail {

class BlockRng {
 public:
  BlockRng(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform on {0, 1, 2}.
  int uniform3() { return static_cast<int>((static_cast<unsigned __int128>(engine_()) * 3) >> 64); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cordic::detail
