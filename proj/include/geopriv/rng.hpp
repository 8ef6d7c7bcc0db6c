#pragma once

#include <cstdint>

namespace geopriv {

// SplitMix64: small deterministic generator used everywhere a seed appears.
// Chosen over std::mt19937_64 + std::*_distribution so sampled values are
// bit-identical across standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in the open interval (0, 1); never returns 0 or 1, so it
  // is safe to take logarithms.
  double next_unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed for sub-task `stream` of a task seeded
// with `seed`. Parallel loops give each index its own stream so the result
// does not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  mix.next();
  return mix.next();
}

}  // namespace geopriv
