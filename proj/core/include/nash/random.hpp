#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace nash {

/// Mixes (seed, index) into an independent 64-bit stream seed so that the
/// draws for sample i do not depend on evaluation order.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform
/// unlike std::uniform_real_distribution.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard complex Gaussian (real and imaginary parts N(0, 1/2)) by Box-Muller.
inline std::complex<double> complex_gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit_double(rng);  // (0, 1]
  const double u2 = unit_double(rng);
  const double radius = std::sqrt(-std::log(u1));
  return std::polar(radius, 2.0 * std::numbers::pi * u2);
}

/// Uniform point in the disk of the given radius.
inline std::complex<double> uniform_in_disk(std::mt19937_64& rng, std::complex<double> center, double radius) {
  const double rad = radius * std::sqrt(unit_double(rng));
  return center + std::polar(rad, 2.0 * std::numbers::pi * unit_double(rng));
}

}  // namespace nash
