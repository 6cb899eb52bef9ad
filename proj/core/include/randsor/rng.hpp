#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace randsor {

// All randomness in the library flows through std::mt19937_64 with 64-bit
// seeds, plus the two hand-rolled draws below. std:: distributions are
// implementation-defined, so sampling through them would not reproduce
// across standard libraries.

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via the Box-Muller transform (one value per two draws).
inline double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace randsor
