#pragma once

#include <cstdint>
#include <random>

namespace orbigeo {

// Deterministic uniform generator.  Doubles are derived from the raw
// mt19937_64 stream, so sequences are identical across platforms and
// standard-library implementations.
class SeededRng {
public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

private:
  std::mt19937_64 gen_;
};

} // namespace orbigeo
