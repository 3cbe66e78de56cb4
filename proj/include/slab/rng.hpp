#pragma once

#include <cstdint>
#include <string_view>

namespace slab {

// Counter-based generator: each value is a pure function of (seed, counter),
// so draws are reproducible regardless of threading or evaluation order.
// Streams for independent purposes are derived by hashing a label into the
// seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  /// Independent stream derived from this seed and a label.
  Rng stream(std::string_view label) const {
    std::uint64_t h = seed_ ^ 0x9e3779b97f4a7c15ull;
    for (char c : label) h = mix(h ^ static_cast<std::uint64_t>(c));
    return Rng(h);
  }
  Rng stream(std::uint64_t n) const { return Rng(mix(seed_ ^ mix(n))); }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(seed_ + counter * 0x9e3779b97f4a7c15ull);
  }

  /// Uniform in [0,1).
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1,1).
  double symmetric(std::uint64_t counter) const {
    return 2.0 * uniform(counter) - 1.0;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t seed_;
};

}  // namespace slab
