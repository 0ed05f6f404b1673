#pragma once

#include <cstddef>
#include <cstdint>

#include "kcenter/core.hpp"

namespace kcenter {

// Sequential node placement: each step adds the vertex that minimizes the
// resulting global max distance (ties toward the lowest vertex index).
// With backtrack, after every addition each already-placed center is
// tentatively relocated to its best vertex until a full pass over the
// centers changes nothing; a relocation is kept only when it strictly
// lowers the max.
Solution greedy(const Scenario& scenario, std::size_t k, bool backtrack = true);

struct GraspParams {
  std::size_t iterations = 32;
  double rcl_alpha = 0.15;  // in [0,1]: 0 degenerates to greedy, 1 to random
};

// Greedy randomized construction plus relocation local search, best of
// `iterations` independent rounds (round i uses derive_seed(seed, i), so a
// longer run extends a shorter one instead of reshuffling it). The
// restricted candidate list keeps every vertex whose placement objective is
// within rcl_alpha of the step's best, measured on the value band
// [best, worst].
Solution grasp(const Scenario& scenario, std::size_t k, std::uint64_t seed,
               const GraspParams& params = {});

}  // namespace kcenter
