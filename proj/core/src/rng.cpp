#include "kcenter/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kcenter {

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_index: n must be > 0");
  }
  if (n == 1) return 0;
  const std::uint64_t range = n;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(range - 1);
  std::uint64_t v;
  do {
    v = next_u64() & mask;
  } while (v >= range);
  return static_cast<std::size_t>(v);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - uniform() keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // SplitMix64 finalizer over the combined value; cheap, well mixed, and
  // stable across platforms.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t k) {
  if (k > n) {
    throw std::invalid_argument("sample_indices: k exceeds n");
  }
  // Partial Fisher-Yates over an index pool; O(n) setup, exact uniformity.
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace kcenter
