#include "kcenter/baselines.hpp"

#include <limits>
#include <stdexcept>

#include "farthest_first.hpp"
#include "kcenter/rng.hpp"

namespace kcenter {

namespace detail {

std::vector<Point> farthest_first(const Scenario& scenario, std::size_t k,
                                  std::vector<Point> centers,
                                  std::optional<Point> start) {
  const auto& vs = scenario.vertices;
  const std::size_t n = vs.size();
  if (centers.empty()) {
    if (!start) {
      throw std::invalid_argument("farthest_first: needs seed centers or a start point");
    }
    std::size_t first = 0;
    double first_d2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d2 = distance_sq(vs[i], *start);
      if (d2 > first_d2) {  // strict: ties keep the lower index
        first_d2 = d2;
        first = i;
      }
    }
    centers.push_back(vs[first]);
  }
  // Distance-to-nearest field over the real centers only; the start point
  // must not shadow any of them.
  std::vector<double> near_d2(n, std::numeric_limits<double>::infinity());
  for (const Point c : centers) {
    for (std::size_t i = 0; i < n; ++i) {
      near_d2[i] = std::min(near_d2[i], distance_sq(vs[i], c));
    }
  }
  while (centers.size() < k) {
    std::size_t far = 0;
    double far_d2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (near_d2[i] > far_d2) {
        far_d2 = near_d2[i];
        far = i;
      }
    }
    centers.push_back(vs[far]);
    for (std::size_t i = 0; i < n; ++i) {
      near_d2[i] = std::min(near_d2[i], distance_sq(vs[i], vs[far]));
    }
  }
  return centers;
}

}  // namespace detail

namespace {

void check_k(const Scenario& scenario, std::size_t k) {
  validate(scenario);
  if (k == 0 || k > scenario.size()) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(scenario.size()) +
                                "], got " + std::to_string(k));
  }
}

}  // namespace

Solution monte_carlo(const Scenario& scenario, std::size_t k, std::uint64_t seed,
                     std::uint64_t trials) {
  check_k(scenario, k);
  if (trials == 0) {
    throw std::invalid_argument("monte_carlo: trials must be > 0");
  }
  Rng rng(seed);
  const auto& vs = scenario.vertices;
  std::vector<Point> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto pick = sample_indices(rng, scenario.size(), k);
    double worst = 0.0;
    for (std::size_t i = 0; i < scenario.size() && worst < best_d2; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const std::size_t c : pick) {
        nearest = std::min(nearest, distance_sq(vs[i], vs[c]));
      }
      worst = std::max(worst, nearest);
    }
    if (worst < best_d2) {  // strict: earlier trials win ties
      best_d2 = worst;
      best.clear();
      for (const std::size_t c : pick) best.push_back(vs[c]);
    }
  }
  return make_solution(scenario, std::move(best), PlacementConstraint::node());
}

Solution two_approx(const Scenario& scenario, std::size_t k, std::uint64_t seed) {
  check_k(scenario, k);
  Rng rng(seed);
  std::vector<Point> centers{scenario.vertices[rng.uniform_index(scenario.size())]};
  centers = detail::farthest_first(scenario, k, std::move(centers), std::nullopt);
  return make_solution(scenario, std::move(centers), PlacementConstraint::node());
}

Solution two_approx_from(const Scenario& scenario, std::size_t k, Point start) {
  check_k(scenario, k);
  auto centers = detail::farthest_first(scenario, k, {}, start);
  return make_solution(scenario, std::move(centers), PlacementConstraint::node());
}

}  // namespace kcenter
