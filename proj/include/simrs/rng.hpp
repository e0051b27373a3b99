#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace simrs {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Child seed of an ordered key sequence: h <- splitmix64(h ^ splitmix64(k_i)) starting at h = 0.
constexpr std::uint64_t mix_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0;
  for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

// Named sub-streams of a trial seed.
enum class Stream : std::uint64_t {
  users = 1,
  sim_channel = 2,
  direct_channel = 3,
  solver = 16,
};

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t salt = 0) {
  return Rng(mix_seed({seed, static_cast<std::uint64_t>(stream), salt}));
}

}  // namespace simrs
