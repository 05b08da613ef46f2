#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace stablike {

/// SplitMix64 finalizer; used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for sub-stream `index` of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Deterministic random stream. Variates are built from raw 64-bit words so
/// sequences do not depend on the standard library's distribution classes.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent child stream.
  RandomStream split(std::uint64_t index) const { return RandomStream(derive_seed(seed_of_engine(), index)); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0, 1), never 0 or 1.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform_open()); }

  /// Standard normal by Box-Muller (one variate per call, no cached pair).
  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t seed_of_engine() const {
    auto copy = engine_;
    return copy();
  }
  std::mt19937_64 engine_;
};

}  // namespace stablike
