#pragma once

#include <cstddef>
#include <vector>

#include "kcenter/core.hpp"

namespace kcenter::detail {

// Nearest / second-nearest bookkeeping over a center set. Knowing, for each
// vertex, the squared distance to its nearest and second-nearest center
// makes "what if center j moved to q" answerable in one O(n) sweep with no
// other state: vertices served by j fall back to their second-nearest,
// everything else keeps its nearest, and q competes with both. The greedy,
// GRASP, annealing and dragoon loops all run on top of this.
class SwapEvaluator {
 public:
  SwapEvaluator(const Scenario& scenario, std::vector<Point> centers);

  std::size_t center_count() const { return centers_.size(); }
  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<std::size_t>& nearest() const { return nearest_; }
  const std::vector<double>& nearest_d2() const { return d2_nearest_; }

  double max_d2() const { return max_d2_; }
  double sum_d() const { return sum_d_; }

  // Squared max distance of the solution with centers[j] replaced by q.
  // Does not depend on the current position of center j.
  double replace_max_d2(std::size_t j, Point q) const;

  // Distance sum of the same modified solution.
  double replace_sum_d(std::size_t j, Point q) const;

  // Squared max distance with q added as an extra center.
  double add_max_d2(Point q) const;

  void commit_replace(std::size_t j, Point q);
  void commit_add(Point q);

 private:
  void rebuild();

  const Scenario* scenario_;
  std::vector<Point> centers_;
  std::vector<std::size_t> nearest_;
  std::vector<double> d2_nearest_;
  std::vector<double> d2_second_;
  double max_d2_ = 0.0;
  double sum_d_ = 0.0;
};

}  // namespace kcenter::detail
