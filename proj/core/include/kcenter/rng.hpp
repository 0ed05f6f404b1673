#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace kcenter {

// Deterministic random source shared by every randomized algorithm in the
// library. std::mt19937_64 pins the bit stream; the distributions are
// implemented here because the std:: distribution objects are free to
// produce different values on different standard libraries, which would
// silently break byte-level reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 random bits.
  double uniform();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform index in [0, n), unbiased via bitmask rejection. n must be > 0.
  std::size_t uniform_index(std::size_t n);

  // Standard normal deviate (Box-Muller, caches the paired value).
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stable stream splitting: hashes (seed, stream) into an independent seed,
// so sub-tasks can be reordered or parallelized without changing results.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// k distinct indices out of [0, n), in selection order. k must be <= n.
std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t k);

}  // namespace kcenter
