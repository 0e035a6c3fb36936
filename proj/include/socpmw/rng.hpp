#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace socpmw {

// Named stream derivation: every random draw in the project flows from a
// master seed through (component, index) so runs replay exactly.
namespace stream {
inline constexpr std::uint64_t kGibbs = 0x67696262;
inline constexpr std::uint64_t kSqEstimate = 0x73716573;
inline constexpr std::uint64_t kGenerator = 0x67656e72;
inline constexpr std::uint64_t kVote = 0x766f7465;
inline constexpr std::uint64_t kTest = 0x74657374;
}  // namespace stream

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t component,
                                  std::uint64_t index = 0) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(component ^ splitmix64(index)));
  return std::mt19937_64(s);
}

// Uniform in [0,1) with 53 random bits. Hand-rolled so output is identical
// across standard library implementations.
inline double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Marsaglia polar method; one value per call, spare discarded.
inline double gaussian(std::mt19937_64& rng) {
  for (;;) {
    double u = 2.0 * uniform_double(rng) - 1.0;
    double v = 2.0 * uniform_double(rng) - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

}  // namespace socpmw
