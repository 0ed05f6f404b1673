#pragma once

#include <cstdint>
#include <vector>

#include "kcenter/core.hpp"

namespace kcenter {

// MacQueen: k distinct random vertices. Lloyd: k uniform points in the
// bounding box. PlusPlus: squared-distance weighted seeding.
enum class KMeansInit { kMacQueen, kLloyd, kPlusPlus };

// When the node constraint is active: snap the centroid to the nearest
// vertex after every update step, or only once after convergence.
enum class SnapPolicy { kEveryStep, kAtEnd };

std::vector<Point> kmeans_init(const Scenario& scenario, std::size_t k,
                               KMeansInit method, std::uint64_t seed);

struct KMeansOptions {
  PlacementConstraint constraint;
  SnapPolicy mapping = SnapPolicy::kAtEnd;
  double tolerance = 1e-9;    // max center movement that still counts as converged
  std::size_t max_iterations = 1000;
};

// Lloyd iteration from the given start centers. A cluster that ends up
// empty is re-seeded to the vertex farthest from its assigned center
// (ascending center index, each reseed takes a vertex not already taken in
// that step). If sse_trace is non-null it receives the SSE after every
// update; under the free constraint that sequence never increases.
Solution kmeans_run(const Scenario& scenario, std::vector<Point> init,
                    const KMeansOptions& options,
                    std::vector<double>* sse_trace = nullptr);

// Restarted k-means, returning the restart with the smallest max distance
// (ties toward the earlier restart). Restart r draws its init from the
// sub-seed derive_seed(seed, r).
Solution kmeans(const Scenario& scenario, std::size_t k, KMeansInit method,
                PlacementConstraint constraint, std::size_t restarts,
                std::uint64_t seed, SnapPolicy mapping = SnapPolicy::kAtEnd);

}  // namespace kcenter
