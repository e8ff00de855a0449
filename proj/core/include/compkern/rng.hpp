#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace compkern {

// Counter-based SplitMix64 stream.
//
// The k-th raw draw (k = 1, 2, ...) is mix64(seed + k * 0x9E3779B97F4A7C15),
// where mix64 is the SplitMix64 finalizer. Uniform doubles take the top 53
// bits; standard normals use the basic Box-Muller transform on two successive
// uniforms (u1 mapped to (0, 1]) and yield the cosine branch first, then the
// sine branch. The whole stream is a pure function of the seed, so simulated
// datasets are reproducible across platforms and implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  // Uniform integer on [0, n); n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_normal_;
};

std::uint64_t mix64(std::uint64_t z);

// Deterministic child seed for a named sub-stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Fisher-Yates permutation of 0..n-1 driven by rng.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

}  // namespace compkern
