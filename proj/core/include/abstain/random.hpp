#pragma once

#include <cstdint>
#include <random>

namespace abstain {

/// splitmix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// A seeded stream of variates with a fixed generation recipe, so a given seed
/// replays bit-identically on any conforming platform:
///
///   engine    std::mt19937_64 seeded with the 64-bit seed
///   uniform   (word >> 11) * 2^-53, in [0, 1)
///   bernoulli one uniform; success iff u < p
///   gaussian  Box-Muller, cosine branch only: two uniforms u1, u2,
///             z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
///
/// No variates are cached between calls, so every call consumes a fixed
/// number of engine words (one for uniform/bernoulli, two for gaussian).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  double gaussian();

  double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace abstain
