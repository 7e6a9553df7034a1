#pragma once

// Counter-based random numbers.
//
// CounterRng is SplitMix64 used in indexed form: draw number c of stream s
// under seed k is splitmix64_mix(key(k, s) + (c + 1) * golden). Any draw can
// be computed without generating the ones before it, so Monte Carlo shots
// can be split across any number of workers and still see the same numbers.

#include <cstdint>

#include "hopf/ray.hpp"

namespace hopf {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// The SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(splitmix64_mix(seed ^ splitmix64_mix(stream + kGoldenGamma))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return splitmix64_mix(key_ + (counter + 1) * kGoldenGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on draws 2c and 2c+1.
  double normal(std::uint64_t counter) const;

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

// Seeded samplers for property suites. Each consumes a fixed block of
// counters starting at `counter`, so callers index samples explicitly.

/// Uniform on S^{2n-1}: normalised vector of 2n standard normals.
StateVector random_state(const CounterRng& rng, std::uint64_t counter, Eigen::Index dim);
/// Uniform on S^2: normalised vector of 3 standard normals.
Direction random_direction(const CounterRng& rng, std::uint64_t counter);
/// Uniform in [0, 2 pi).
double random_phase(const CounterRng& rng, std::uint64_t counter);
/// Haar-random element of SU(2).
CMatrix random_su2(const CounterRng& rng, std::uint64_t counter);

}  // namespace hopf
