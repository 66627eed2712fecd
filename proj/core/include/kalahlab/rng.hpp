#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kalahlab {

// Seeded generator used for every stochastic choice. Bounded draws use
// rejection sampling on the raw 64-bit stream rather than
// std::uniform_int_distribution, so sequences are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [lo, hi].
  int UniformInt(int lo, int hi);

  // Sub-seed for one purpose of an experiment:
  //   SplitMix64(master ^ FNV1a64(purpose) ^ SplitMix64(index)).
  // Stages keyed by different purposes (e.g. "boards", "prefix") can be
  // re-run independently without disturbing one another.
  static std::uint64_t Derive(std::uint64_t master, std::string_view purpose,
                              std::uint64_t index = 0);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t Fnv1a64(std::string_view bytes);

}  // namespace kalahlab
