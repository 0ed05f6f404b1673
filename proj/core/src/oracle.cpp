#include "kcenter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kcenter/rng.hpp"

namespace kcenter::oracle {

namespace {

// Exact C(n, k), saturating at cap + 1 so callers can compare against a
// budget without overflow. The running product C(n-k+i, i) keeps every
// intermediate value integral.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

struct CircleSq {
  Point center;
  double r2 = 0.0;

  bool contains(Point p) const {
    return distance_sq(p, center) <= r2 + 1e-10 * (1.0 + r2);
  }
};

CircleSq circle_two(Point a, Point b) {
  const Point c{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  return {c, distance_sq(a, c)};
}

CircleSq circle_three(Point a, Point b, Point c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1.0});
  if (std::abs(d) < 1e-12 * scale * scale) {
    // Collinear: the minimum circle through all three is the diameter
    // circle of the farthest pair.
    CircleSq best = circle_two(a, b);
    for (const CircleSq cand : {circle_two(a, c), circle_two(b, c)}) {
      if (cand.r2 > best.r2) best = cand;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const Point center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  return {center, distance_sq(a, center)};
}

}  // namespace

Solution brute_force_node(const Scenario& scenario, std::size_t k, std::uint64_t budget) {
  validate(scenario);
  const std::size_t n = scenario.size();
  if (k == 0 || k > n) {
    throw std::invalid_argument("brute_force_node: k must be in [1, " +
                                std::to_string(n) + "], got " + std::to_string(k));
  }
  // Count against a near-overflow cap so the error can carry the exact
  // combination count whenever it is representable.
  constexpr std::uint64_t count_cap = std::numeric_limits<std::uint64_t>::max() - 1;
  const std::uint64_t combos = binomial_capped(n, k, count_cap);
  if (combos > budget) {
    const std::string count = combos > count_cap
                                  ? "more than " + std::to_string(count_cap)
                                  : std::to_string(combos);
    std::string msg = "brute_force_node: C(" + std::to_string(n) + ", " +
                      std::to_string(k) + ") = " + count +
                      " subsets exceeds the budget of " + std::to_string(budget);
    throw EnumerationBudgetError(std::move(msg), combos);
  }

  const auto& vs = scenario.vertices;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::vector<std::size_t> best = pick;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (;;) {
    // Max-min distance of this subset, abandoning it as soon as it cannot
    // strictly beat the incumbent. Strict improvement keeps the first, and
    // therefore lexicographically smallest, optimum.
    double worst = 0.0;
    for (std::size_t i = 0; i < n && worst < best_d2; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const std::size_t c : pick) {
        nearest = std::min(nearest, distance_sq(vs[i], vs[c]));
      }
      worst = std::max(worst, nearest);
    }
    if (worst < best_d2) {
      best_d2 = worst;
      best = pick;
    }
    // Advance to the next k-combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::vector<Point> centers;
  centers.reserve(k);
  for (const std::size_t c : best) centers.push_back(vs[c]);
  return make_solution(scenario, std::move(centers), PlacementConstraint::node());
}

Circle min_enclosing_circle(const std::vector<Point>& points) {
  if (points.empty()) {
    throw std::invalid_argument("min_enclosing_circle: no points");
  }
  // Randomized incremental construction (expected linear). The shuffle is
  // seeded with a constant: the circle is unique regardless of order, the
  // randomization only guards the running time.
  std::vector<Point> pts = points;
  Rng rng(0x5EEDC19C1EULL);
  for (std::size_t i = pts.size(); i > 1; --i) {
    std::swap(pts[i - 1], pts[rng.uniform_index(i)]);
  }

  CircleSq circle{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (circle.contains(pts[i])) continue;
    circle = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (circle.contains(pts[j])) continue;
      circle = circle_two(pts[i], pts[j]);
      for (std::size_t l = 0; l < j; ++l) {
        if (circle.contains(pts[l])) continue;
        circle = circle_three(pts[i], pts[j], pts[l]);
      }
    }
  }
  return {circle.center, std::sqrt(circle.r2)};
}

Point brute_force_free_1center(const std::vector<Point>& points) {
  return min_enclosing_circle(points).center;
}

}  // namespace kcenter::oracle
