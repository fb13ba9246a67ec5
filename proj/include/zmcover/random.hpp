#pragma once

#include <cstdint>
#include <random>

namespace zmcover {

// Reproducible generator for all seeded sampling: std::mt19937_64 (whose
// output sequence is fixed by the standard) plus a bounded draw by rejection,
// so results do not depend on the standard library's distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zmcover
