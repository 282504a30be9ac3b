#pragma once

// Portable deterministic randomness. std::mt19937_64 output is fixed by the
// standard but the std distributions are not, so the few distributions the
// simulator needs are implemented here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace poisongame::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform in [0, 1) with 53 bits of precision.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * uniform01(engine);
}

/// Uniform integer in [0, n) by rejection sampling.
inline std::uint64_t uniform_index(Engine& engine, std::uint64_t n) {
  const std::uint64_t limit = Engine::max() - (Engine::max() % n);
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % n;
}

/// Standard normal via Box-Muller (one value per call, second discarded).
inline double normal(Engine& engine) {
  double u1 = uniform01(engine);
  while (u1 <= 0.0) u1 = uniform01(engine);
  const double u2 = uniform01(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <typename T>
void shuffle(std::vector<T>& values, Engine& engine) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(engine, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace poisongame::rng
