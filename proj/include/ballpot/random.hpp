#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "ballpot/point.hpp"

namespace ballpot {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: the same (seed, stream, index) always yields the same
/// child seed, independent of evaluation order or worker count.
constexpr std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  return splitMix64(splitMix64(splitMix64(seed) ^ stream) ^ index);
}

inline Rng makeRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  return Rng(deriveSeed(seed, stream, index));
}

/// Uniform point of S written into `out` (normalized 2n-dimensional Gaussian).
void sampleUniformSphere(Rng& rng, std::span<Complex> out);

/// Uniform point of the ball of the given radius.
void sampleUniformBall(Rng& rng, std::span<Complex> out, double radius = 1.0);

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace ballpot
