#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kcenter/core.hpp"

namespace kcenter {

// Secondary ranking used when a candidate move ties the global max.
enum class TieCriterion { kMean, kSum };

struct DragoonParams {
  double eps0 = 0.0;       // initial grid spacing; 0 picks bbox long side / 16
  double eps_min = 1e-3;   // refinement stops once eps drops below this
  TieCriterion tie = TieCriterion::kMean;
  int grid_window = 16;    // free search: half-width around the current center, in grid steps
  bool exact_orientation = false;  // start from the minimum enclosing circle center instead of the coordinate mean
};

// Trace entry per accepted move: global (max, tie value) after the move.
// Lexicographically strictly decreasing by construction.
struct DragoonTrace {
  std::vector<std::pair<double, double>> accepted;
  std::size_t iterations = 0;  // outer passes executed
};

// The coordinate mean of the vertices (the "orientation" point the initial
// placement is anchored to). With exact = true, the minimum enclosing
// circle center, the true free 1-center, is used instead.
Point orientation_point(const Scenario& scenario, bool exact = false);

// Deterministic initial placement: farthest-first traversal seeded at the
// orientation point. For k = 1 this is the vertex farthest from it.
std::vector<Point> dragoon_init(const Scenario& scenario, std::size_t k,
                                bool exact_orientation = false);

// One-center-at-a-time refinement. Every outer pass reassigns all vertices,
// visits clusters worst first (cluster max, ties toward the lower center
// index), and for each cluster scans candidate positions for its center,
// judging each candidate by the objective of the whole scenario after full
// reassignment. A move is kept only when (global max, tie value) strictly
// improves lexicographically, and each center moves at most once per pass.
// Frozen centers (when the mask is given) are never moved but still serve
// vertices. Node variant: candidates are the cluster's member vertices.
Solution dragoon_refine_node(const Scenario& scenario, std::vector<Point> centers,
                             const DragoonParams& params = {},
                             const std::vector<bool>* frozen = nullptr,
                             DragoonTrace* trace = nullptr);

// Free variant: candidates lie on a square grid of spacing eps anchored at
// the current center, clipped to the cluster's bounding box expanded by eps
// and to +-grid_window steps per axis. When a pass accepts no move, eps is
// halved; the run stops once eps < eps_min and a pass accepts nothing.
Solution dragoon_refine_free(const Scenario& scenario, std::vector<Point> centers,
                             const DragoonParams& params = {},
                             const std::vector<bool>* frozen = nullptr,
                             DragoonTrace* trace = nullptr);

// Init + refine under the given constraint. Fully deterministic: no seed.
Solution dragoon(const Scenario& scenario, std::size_t k,
                 PlacementConstraint constraint = PlacementConstraint::node(),
                 const DragoonParams& params = {},
                 DragoonTrace* trace = nullptr);

// Planning variant with pre-placed immovable centers: the fixed centers
// count toward k, keep serving vertices, and never move; the remaining
// k - |fixed| centers are placed by farthest-first and refined as usual.
// Under the node constraint every fixed center must coincide with a vertex.
Solution dragoon_with_fixed(const Scenario& scenario, std::size_t k,
                            const std::vector<Point>& fixed_centers,
                            PlacementConstraint constraint,
                            const DragoonParams& params = {});

}  // namespace kcenter
