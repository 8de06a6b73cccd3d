#pragma once

#include <cmath>
#include <cstdint>

#include "sh3/minkowski.hpp"

namespace sh3 {

/// Deterministic xoshiro256** generator with explicit double conversion,
/// so sampled streams are identical across platforms and toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 seeding
    std::uint64_t x = seed;
    for (auto &w : s_) {
      x += 0x9E3779B97f4A7C15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      w = z ^ (z >> 31);
    }
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [a,b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller.
  double gaussian() {
    double u1 = 0;
    while (u1 == 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  MinkowskiVector gaussian_vec4() { return {gaussian(), gaussian(), gaussian(), gaussian()}; }

  /// Uniform direction on S^2 in R^3.
  void unit_dir(double &x, double &y, double &z) {
    double ct = uniform(-1.0, 1.0);
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double ph = uniform(0.0, 2.0 * M_PI);
    x = st * std::cos(ph);
    y = st * std::sin(ph);
    z = ct;
  }

private:
  std::uint64_t s_[4];
};

/// Derives an independent per-item seed (used to fan trials across threads).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (0x9E3779B97f4A7C15ULL * (index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace sh3
