#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace d0b {

// splitmix64: tiny counter-based generator with a well-mixed output stage.
// Used instead of std::mt19937 + std::uniform_real_distribution because the
// standard distributions are not specified bit-for-bit across library
// implementations, and reproducibility across runs and thread counts is a
// hard requirement here.  Each Monte Carlo trial gets its own stream derived
// from (seed, trial index), so the schedule that assigns trials to threads
// cannot change the numbers drawn.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by scaling; bound is tiny (alphabet or
  // codebook sizes) so the modulo bias of ~bound/2^53 is irrelevant, and the
  // result is identical on every platform.
  std::uint64_t next_below(std::uint64_t bound) {
    auto v = static_cast<std::uint64_t>(next_unit() * static_cast<double>(bound));
    return v >= bound ? bound - 1 : v;
  }

 private:
  std::uint64_t state_;
};

// Decorrelated per-trial seed: stepping the seed by the splitmix increment
// times (index+1) puts every trial on its own stream.
inline std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
}

// Random nonnegative weights with occasional hard zeros, so that code paths
// for empty support and infinite ratios get exercised.  Exactly two draws
// per entry regardless of outcome, keeping streams reproducible; guaranteed
// not all-zero.
inline std::vector<double> random_weights(SplitMix64& rng, int k) {
  std::vector<double> w(static_cast<std::size_t>(k));
  bool any = false;
  for (int i = 0; i < k; ++i) {
    const double zero_coin = rng.next_unit();
    const double value = rng.next_unit();
    w[static_cast<std::size_t>(i)] = zero_coin < 0.15 ? 0.0 : value;
    if (w[static_cast<std::size_t>(i)] > 0.0) any = true;
  }
  if (!any) w[rng.next_below(static_cast<std::uint64_t>(k))] = 1.0;
  return w;
}

}  // namespace d0b
