#include "dpt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dpt {

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomStream::below(0)");
  // Draws below 2^64 mod bound are rejected so the remaining range is a
  // multiple of bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x < threshold);
  return x % bound;
}

double RandomStream::unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RandomStream::exponential(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("exponential rate must be positive");
  return -std::log1p(-unit()) / rate;
}

RandomStream derive_vertex_rng(std::uint64_t seed, std::uint64_t vertex, std::uint64_t round,
                               std::uint64_t stream) {
  std::uint64_t h = mix64(seed ^ 0x5eedULL);
  h = mix64(h ^ vertex);
  h = mix64(h ^ (round * 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ (stream * 0xaef17502108ef2d9ULL));
  return RandomStream(h);
}

std::uint64_t derive_trial_seed(std::uint64_t base, std::uint64_t trial) {
  return mix64(mix64(base) + trial);
}

}  // namespace dpt
