#pragma once

#include <cstdint>
#include <stdexcept>

#include "kcenter/core.hpp"

namespace kcenter::oracle {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Raised before any enumeration work starts when C(n, k) exceeds the
// budget; carries the offending combination count.
class EnumerationBudgetError : public std::runtime_error {
 public:
  EnumerationBudgetError(std::string message, std::uint64_t count)
      : std::runtime_error(std::move(message)), combinations(count) {}

  std::uint64_t combinations;
};

// Exact node-placement solution by exhaustive k-subset enumeration, for
// cross-checking the heuristics at small sizes. Subsets are scanned in
// lexicographic index order and strict improvement is required, so among
// equally good optima the lexicographically smallest index set wins.
Solution brute_force_node(const Scenario& scenario, std::size_t k,
                          std::uint64_t budget = kDefaultEnumerationBudget);

struct Circle {
  Point center;
  double radius = 0.0;
};

// Exact free-placement 1-center: the minimum enclosing circle (Welzl's
// algorithm over a deterministically shuffled copy of the input).
Circle min_enclosing_circle(const std::vector<Point>& points);

// The same oracle reduced to the optimal center point.
Point brute_force_free_1center(const std::vector<Point>& points);

}  // namespace kcenter::oracle
