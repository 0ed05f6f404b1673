#pragma once

#include <cstdint>

#include "kcenter/core.hpp"

namespace kcenter {

// Best of `trials` uniformly sampled k-subsets of the vertices. Trials are
// evaluated in order and accepted only on strict improvement, so the result
// for a given seed is a prefix-minimum: more trials never make it worse.
Solution monte_carlo(const Scenario& scenario, std::size_t k,
                     std::uint64_t seed, std::uint64_t trials);

// Farthest-first traversal from a random first vertex. The classic bound
// holds: the max objective is at most twice the node-placement optimum.
Solution two_approx(const Scenario& scenario, std::size_t k, std::uint64_t seed);

// Deterministic farthest-first: the first center is the vertex farthest
// from `start` (which itself is only a measuring point, not a center), and
// the traversal continues from there. No randomness anywhere, and the
// selected centers for k are a prefix of those for k+1.
Solution two_approx_from(const Scenario& scenario, std::size_t k, Point start);

}  // namespace kcenter
