#pragma once

#include "gapforge/common.hpp"

#include <cstdint>
#include <random>

namespace gapforge {

/// SplitMix64 finalizer; derives independent stream seeds from
/// (master seed, index) pairs so parallel trials are schedule-independent.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Portable seeded generator. Only raw mt19937_64 output is used, never the
/// implementation-defined std distributions, so streams are identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  /// True with probability exactly num/den.
  bool bernoulli(std::uint64_t num, std::uint64_t den);
  bool bernoulli(const Fraction& p);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Uniform k-subset of [0, n), sorted.
  std::vector<std::uint32_t> subset(std::uint32_t n, std::uint32_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gapforge
