#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kcenter/core.hpp"

namespace kcenter::detail {

// Extends `centers` up to k vertices by farthest-first traversal: each step
// adds the vertex with the largest distance to its nearest already-chosen
// center (ties toward the lowest vertex index). When `centers` is empty the
// traversal needs an anchor: `start` is used purely as a measuring point
// for the first pick and contributes nothing afterwards. Returns the
// selected centers (the incoming ones first, in order).
std::vector<Point> farthest_first(const Scenario& scenario, std::size_t k,
                                  std::vector<Point> centers,
                                  std::optional<Point> start);

}  // namespace kcenter::detail
