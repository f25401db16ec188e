#pragma once

#include <cstdint>
#include <random>

namespace latcensus {

/// Reproducible 64-bit generator: std::mt19937_64 seeded with
/// splitmix64(seed ^ splitmix64(stream)). Stream k of a parallel run uses
/// split(k); streams with distinct (seed, stream) pairs are independent.
/// Bounded draws use rejection, never std::uniform_int_distribution, so
/// output is bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), engine_(splitmix64(seed ^ splitmix64(stream))) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Largest multiple of bound representable in 2^64, minus one.
    const std::uint64_t reject_from = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x <= reject_from) return x % bound;
    }
  }

  Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace latcensus
