#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace plab {

// Deterministic RNG. All stochastic routines take an explicit seed and derive
// per-task streams with derive_seed so results are independent of thread count
// and of how many restarts ran before.
using Rng = std::mt19937_64;

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over (base, stream); avoids correlated mt19937 seeds.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0,1) that does not depend on std::uniform_real_distribution
// implementation details.
inline double rng_unit(Rng& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

inline int rng_int(Rng& rng, int n) {  // uniform in [0, n)
  return int(rng() % std::uint64_t(n));
}

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

// Fixed-format float printing used for every serialized number, so identical
// configs produce identical bytes.
std::string fmt_double(double x);

// FNV-1a 64-bit hex digest; used to fingerprint witness vectors in outputs.
std::string fnv1a_hex(const std::string& data);

}  // namespace plab
