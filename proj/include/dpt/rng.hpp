#pragma once

#include <cstdint>
#include <limits>

namespace dpt {

/// SplitMix64 finalizer; used for seed derivation and as the stream generator.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random stream. Satisfies UniformRandomBitGenerator, but the
/// bounded and real draws below are used everywhere so that results do not
/// depend on the standard library's distribution implementations.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  /// Exponential with the given rate, by inverse CDF on a 64-bit draw.
  double exponential(double rate);

  bool coin(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

/// Stream for vertex v in the given round of a run with the given seed.
/// `stream` separates independent uses (e.g. program phases) of the same triple.
RandomStream derive_vertex_rng(std::uint64_t seed, std::uint64_t vertex, std::uint64_t round,
                               std::uint64_t stream = 0);

/// Seed for trial i of an experiment.
std::uint64_t derive_trial_seed(std::uint64_t base, std::uint64_t trial);

}  // namespace dpt
