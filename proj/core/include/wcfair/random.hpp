#pragma once

#include <cstdint>
#include <random>

namespace wcfair {

// Seeded generator with portable draws. The standard distributions are
// implementation-defined, so draws are built directly from the engine bits
// to keep results identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Requires bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wcfair
