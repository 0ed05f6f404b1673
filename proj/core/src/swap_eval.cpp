#include "swap_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace kcenter::detail {

SwapEvaluator::SwapEvaluator(const Scenario& scenario, std::vector<Point> centers)
    : scenario_(&scenario), centers_(std::move(centers)) {
  if (centers_.empty()) {
    throw std::invalid_argument("SwapEvaluator: centers must be non-empty");
  }
  rebuild();
}

void SwapEvaluator::rebuild() {
  const auto& vs = scenario_->vertices;
  const std::size_t n = vs.size();
  nearest_.assign(n, 0);
  d2_nearest_.assign(n, 0.0);
  d2_second_.assign(n, 0.0);
  max_d2_ = 0.0;
  sum_d_ = 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_d2 = inf;
    double second_d2 = inf;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
      const double d2 = distance_sq(vs[i], centers_[j]);
      if (d2 < best_d2) {
        second_d2 = best_d2;
        best_d2 = d2;
        best = j;
      } else if (d2 < second_d2) {
        second_d2 = d2;
      }
    }
    nearest_[i] = best;
    d2_nearest_[i] = best_d2;
    d2_second_[i] = second_d2;
    max_d2_ = std::max(max_d2_, best_d2);
    sum_d_ += std::sqrt(best_d2);
  }
}

double SwapEvaluator::replace_max_d2(std::size_t j, Point q) const {
  const auto& vs = scenario_->vertices;
  double worst = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double base = nearest_[i] == j ? d2_second_[i] : d2_nearest_[i];
    const double cand = distance_sq(vs[i], q);
    worst = std::max(worst, std::min(base, cand));
  }
  return worst;
}

double SwapEvaluator::replace_sum_d(std::size_t j, Point q) const {
  const auto& vs = scenario_->vertices;
  double sum = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double base = nearest_[i] == j ? d2_second_[i] : d2_nearest_[i];
    const double cand = distance_sq(vs[i], q);
    sum += std::sqrt(std::min(base, cand));
  }
  return sum;
}

double SwapEvaluator::add_max_d2(Point q) const {
  const auto& vs = scenario_->vertices;
  double worst = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double d2 = std::min(d2_nearest_[i], distance_sq(vs[i], q));
    worst = std::max(worst, d2);
  }
  return worst;
}

void SwapEvaluator::commit_replace(std::size_t j, Point q) {
  centers_.at(j) = q;
  rebuild();
}

void SwapEvaluator::commit_add(Point q) {
  // Incremental: the new center can only steal the nearest or second slot.
  const auto& vs = scenario_->vertices;
  const std::size_t j = centers_.size();
  centers_.push_back(q);
  max_d2_ = 0.0;
  sum_d_ = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double d2 = distance_sq(vs[i], q);
    if (d2 < d2_nearest_[i]) {
      d2_second_[i] = d2_nearest_[i];
      d2_nearest_[i] = d2;
      nearest_[i] = j;
    } else if (d2 < d2_second_[i]) {
      d2_second_[i] = d2;
    }
    max_d2_ = std::max(max_d2_, d2_nearest_[i]);
    sum_d_ += std::sqrt(d2_nearest_[i]);
  }
}

}  // namespace kcenter::detail
