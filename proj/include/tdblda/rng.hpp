#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace tdblda {

/// Seedable, splittable pseudo-random generator with a fixed, documented
/// algorithm so that corrupted datasets and splits are reproducible across
/// platforms and standard libraries:
///
///   * state: xoshiro256** (Blackman & Vigna), seeded by four successive
///     SplitMix64 outputs of the 64-bit seed;
///   * uniform01: top 53 bits of next() times 2^-53, in [0, 1);
///   * uniform_index(n): rejection sampling on next() % n, unbiased;
///   * normal: Box-Muller, cosine branch only, u1 = 1 − uniform01() in (0, 1];
///   * split(k): a child seeded with mix(seed ^ mix(k + golden gamma)), where
///     mix is the SplitMix64 finalizer. Children depend only on the parent's
///     seed and k, never on how many draws the parent has made.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256**/splitmix64";

  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() noexcept;
  double uniform01() noexcept;
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  double normal(double mean = 0.0, double stddev = 1.0) noexcept;
  Rng split(std::uint64_t index) const noexcept;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
};

/// SplitMix64 output function applied to x + golden gamma.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace tdblda
