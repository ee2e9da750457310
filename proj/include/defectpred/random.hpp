#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace defectpred::rng {

// splitmix64 step; advances state and returns the next value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and a salt.
// Every stochastic component gets its own derived seed so that adding or
// reordering consumers never perturbs another component's sequence.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (salt + 1));
  return splitmix64(state);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

// Uniform double in [0, 1). Avoids std::uniform_real_distribution, whose
// output is implementation-defined; this mapping is fixed by us.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Modulo bias is irrelevant for shuffling and
// sampler initialization; determinism is what matters here.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  return gen() % n;
}

// Fisher-Yates shuffle with our own index draws (std::shuffle is
// implementation-defined).
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(gen, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace defectpred::rng
