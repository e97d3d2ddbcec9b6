// random.hpp - reproducible random streams.
//
// Stream (seed, k) is a std::mt19937_64 seeded through
// std::seed_seq{lo32(seed), hi32(seed), lo32(k), hi32(k)}. Both the engine
// and seed_seq are fully specified by the standard, and bounded draws use
// plain rejection sampling rather than a library distribution, so a
// (seed, k) pair yields the same stream on every conforming platform.
#pragma once

#include <cstdint>
#include <random>

namespace lightbulb {

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform on [0, bound) for a 64-bit engine.
template <class Engine>
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  static_assert(Engine::min() == 0 && Engine::max() == ~std::uint64_t{0});
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace lightbulb
