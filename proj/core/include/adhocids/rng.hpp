#pragma once

#include <cstdint>
#include <random>

namespace adhocids {

// splitmix64 finalizer, used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Named sub-streams of one master seed. Topology, training data, GA search
// and the intrusion schedule draw from separate streams so one can be varied
// while the others stay fixed.
enum class SeedStream : std::uint64_t {
  Topology = 1,
  Training = 2,
  Ga = 3,
  Schedule = 4,
};

inline std::uint64_t sub_seed(std::uint64_t master, SeedStream stream) {
  return mix64(master ^ mix64(static_cast<std::uint64_t>(stream)));
}

using Rng = std::mt19937_64;

// 53-bit uniform in [0, 1). The bit pattern is pinned here instead of going
// through std::uniform_real_distribution, whose internals are
// implementation-defined.
inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). bound must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  return rng() % bound;
}

inline std::uint8_t uniform_bit(Rng& rng) {
  return static_cast<std::uint8_t>(rng() >> 63);
}

}  // namespace adhocids
