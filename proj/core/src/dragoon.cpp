#include "kcenter/dragoon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "farthest_first.hpp"
#include "kcenter/oracle.hpp"
#include "swap_eval.hpp"

namespace kcenter {

namespace {

// Safety valve: every accepted move strictly decreases the lexicographic
// objective, so passes cannot cycle; this only bounds a descent that would
// otherwise take absurdly long on adversarial input.
constexpr std::size_t kMaxPasses = 100000;

void check_k(const Scenario& scenario, std::size_t k) {
  validate(scenario);
  if (k == 0 || k > scenario.size()) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(scenario.size()) +
                                "], got " + std::to_string(k));
  }
}

void check_frozen(const std::vector<bool>* frozen, std::size_t k) {
  if (frozen && frozen->size() != k) {
    throw std::invalid_argument("frozen mask must have one flag per center");
  }
}

double tie_value(TieCriterion tie, double sum, std::size_t n) {
  return tie == TieCriterion::kMean ? sum / static_cast<double>(n) : sum;
}

struct Clusters {
  std::vector<std::vector<std::size_t>> members;
  std::vector<std::size_t> order;  // center indices, worst cluster first
};

// Snapshot of the cluster structure at the start of a pass. The visit order
// is by descending cluster max distance, ties toward the lower center index.
Clusters snapshot_clusters(const detail::SwapEvaluator& ev) {
  const std::size_t k = ev.center_count();
  Clusters cl;
  cl.members.resize(k);
  std::vector<double> local_max(k, -1.0);
  const auto& nearest = ev.nearest();
  const auto& d2 = ev.nearest_d2();
  for (std::size_t i = 0; i < nearest.size(); ++i) {
    cl.members[nearest[i]].push_back(i);
    local_max[nearest[i]] = std::max(local_max[nearest[i]], d2[i]);
  }
  cl.order.resize(k);
  for (std::size_t j = 0; j < k; ++j) cl.order[j] = j;
  std::sort(cl.order.begin(), cl.order.end(), [&](std::size_t a, std::size_t b) {
    return local_max[a] != local_max[b] ? local_max[a] > local_max[b] : a < b;
  });
  return cl;
}

// Best candidate for center j by (global max, distance sum), ties toward
// the earlier candidate. Returns true and commits the move when it beats
// the current solution lexicographically strictly.
template <typename CandidateRange>
bool try_move(const Scenario& scenario, detail::SwapEvaluator& ev, std::size_t j,
              const CandidateRange& candidates, TieCriterion tie,
              DragoonTrace* trace) {
  const double cur_max = ev.max_d2();
  const double cur_sum = ev.sum_d();
  bool have = false;
  Point best_point{};
  double best_max = std::numeric_limits<double>::infinity();
  double best_sum = std::numeric_limits<double>::infinity();
  for (const Point q : candidates) {
    const double m = ev.replace_max_d2(j, q);
    if (m > cur_max || m > best_max) continue;  // cannot win
    const double s = ev.replace_sum_d(j, q);
    if (!have || m < best_max || (m == best_max && s < best_sum)) {
      have = true;
      best_point = q;
      best_max = m;
      best_sum = s;
    }
  }
  if (!have) return false;
  if (best_max < cur_max || (best_max == cur_max && best_sum < cur_sum)) {
    ev.commit_replace(j, best_point);
    if (trace) {
      trace->accepted.emplace_back(std::sqrt(ev.max_d2()),
                                   tie_value(tie, ev.sum_d(), scenario.size()));
    }
    return true;
  }
  return false;
}

// Candidate range over the member vertices of a cluster.
struct NodeCandidates {
  const Scenario* scenario;
  const std::vector<std::size_t>* members;

  struct Iterator {
    const Scenario* scenario;
    const std::size_t* it;
    Point operator*() const { return scenario->vertices[*it]; }
    Iterator& operator++() {
      ++it;
      return *this;
    }
    bool operator!=(const Iterator& o) const { return it != o.it; }
  };
  Iterator begin() const { return {scenario, members->data()}; }
  Iterator end() const { return {scenario, members->data() + members->size()}; }
};

}  // namespace

Point orientation_point(const Scenario& scenario, bool exact) {
  validate(scenario);
  if (exact) {
    return oracle::min_enclosing_circle(scenario.vertices).center;
  }
  double sx = 0.0, sy = 0.0;
  for (const Point p : scenario.vertices) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(scenario.size());
  return {sx / n, sy / n};
}

std::vector<Point> dragoon_init(const Scenario& scenario, std::size_t k,
                                bool exact_orientation) {
  check_k(scenario, k);
  return detail::farthest_first(scenario, k, {},
                                orientation_point(scenario, exact_orientation));
}

Solution dragoon_refine_node(const Scenario& scenario, std::vector<Point> centers,
                             const DragoonParams& params,
                             const std::vector<bool>* frozen, DragoonTrace* trace) {
  check_k(scenario, centers.size());
  check_frozen(frozen, centers.size());
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const Point c = centers[j];
    if (!std::any_of(scenario.vertices.begin(), scenario.vertices.end(),
                     [c](Point v) { return v == c; })) {
      throw std::invalid_argument("dragoon_refine_node: center " + std::to_string(j) +
                                  " is not a scenario vertex");
    }
  }
  if (trace) *trace = {};
  detail::SwapEvaluator ev(scenario, std::move(centers));
  for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
    if (trace) ++trace->iterations;
    const Clusters cl = snapshot_clusters(ev);
    bool moved = false;
    for (const std::size_t j : cl.order) {
      if (frozen && (*frozen)[j]) continue;
      if (cl.members[j].empty()) continue;
      moved |= try_move(scenario, ev,  j,
                        NodeCandidates{&scenario, &cl.members[j]}, params.tie, trace);
    }
    if (!moved) break;
  }
  return make_solution(scenario, ev.centers(), PlacementConstraint::node());
}

Solution dragoon_refine_free(const Scenario& scenario, std::vector<Point> centers,
                             const DragoonParams& params,
                             const std::vector<bool>* frozen, DragoonTrace* trace) {
  check_k(scenario, centers.size());
  check_frozen(frozen, centers.size());
  if (params.eps0 < 0.0 || params.eps_min <= 0.0) {
    throw std::invalid_argument("dragoon_refine_free: eps0 must be >= 0 and eps_min > 0");
  }
  if (params.grid_window < 1) {
    throw std::invalid_argument("dragoon_refine_free: grid_window must be >= 1");
  }
  if (trace) *trace = {};
  const double eps0 =
      params.eps0 > 0.0 ? params.eps0 : bounding_box(scenario).long_side() / 16.0;
  double eps = eps0;
  const int window = params.grid_window;

  detail::SwapEvaluator ev(scenario, std::move(centers));
  std::vector<Point> grid;
  for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
    if (trace) ++trace->iterations;
    const Clusters cl = snapshot_clusters(ev);
    bool moved = false;
    for (const std::size_t j : cl.order) {
      if (frozen && (*frozen)[j]) continue;
      const auto& members = cl.members[j];
      if (members.empty()) continue;
      // Candidate grid: spacing eps, anchored at the current center,
      // limited to +-window steps per axis and clipped to the cluster's
      // bounding box expanded by eps. Row-major enumeration fixes the
      // tie order.
      double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
      double hi_x = -lo_x, hi_y = -lo_x;
      for (const std::size_t i : members) {
        const Point v = scenario.vertices[i];
        lo_x = std::min(lo_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_x = std::max(hi_x, v.x);
        hi_y = std::max(hi_y, v.y);
      }
      lo_x -= eps;
      lo_y -= eps;
      hi_x += eps;
      hi_y += eps;
      const Point c = ev.centers()[j];
      grid.clear();
      for (int dy = -window; dy <= window; ++dy) {
        const double y = c.y + dy * eps;
        if (y < lo_y || y > hi_y) continue;
        for (int dx = -window; dx <= window; ++dx) {
          const double x = c.x + dx * eps;
          if (x < lo_x || x > hi_x) continue;
          grid.push_back({x, y});
        }
      }
      moved |= try_move(scenario, ev, j, grid, params.tie, trace);
    }
    if (moved) continue;
    if (eps < params.eps_min) break;
    eps /= 2.0;
  }
  return make_solution(scenario, ev.centers(),
                       PlacementConstraint::free_plane(eps0, params.eps_min));
}

Solution dragoon(const Scenario& scenario, std::size_t k,
                 PlacementConstraint constraint, const DragoonParams& params,
                 DragoonTrace* trace) {
  check_k(scenario, k);
  auto init = dragoon_init(scenario, k, params.exact_orientation);
  if (constraint.kind == Placement::kNode) {
    return dragoon_refine_node(scenario, std::move(init), params, nullptr, trace);
  }
  // Grid bounds given on the constraint take precedence over the knobs.
  DragoonParams p = params;
  if (constraint.eps0 > 0.0) p.eps0 = constraint.eps0;
  if (constraint.eps_min > 0.0) p.eps_min = constraint.eps_min;
  return dragoon_refine_free(scenario, std::move(init), p, nullptr, trace);
}

Solution dragoon_with_fixed(const Scenario& scenario, std::size_t k,
                            const std::vector<Point>& fixed_centers,
                            PlacementConstraint constraint,
                            const DragoonParams& params) {
  check_k(scenario, k);
  if (fixed_centers.size() > k) {
    throw std::invalid_argument("dragoon_with_fixed: more fixed centers than k");
  }
  if (constraint.kind == Placement::kNode) {
    for (std::size_t j = 0; j < fixed_centers.size(); ++j) {
      const Point c = fixed_centers[j];
      if (!std::any_of(scenario.vertices.begin(), scenario.vertices.end(),
                       [c](Point v) { return v == c; })) {
        throw std::invalid_argument("dragoon_with_fixed: fixed center " +
                                    std::to_string(j) +
                                    " must sit on a vertex under the node constraint");
      }
    }
  }
  auto centers = detail::farthest_first(
      scenario, k, fixed_centers,
      orientation_point(scenario, params.exact_orientation));
  std::vector<bool> frozen(k, false);
  for (std::size_t j = 0; j < fixed_centers.size(); ++j) frozen[j] = true;
  if (constraint.kind == Placement::kNode) {
    return dragoon_refine_node(scenario, std::move(centers), params, &frozen, nullptr);
  }
  DragoonParams p = params;
  if (constraint.eps0 > 0.0) p.eps0 = constraint.eps0;
  if (constraint.eps_min > 0.0) p.eps_min = constraint.eps_min;
  return dragoon_refine_free(scenario, std::move(centers), p, &frozen, nullptr);
}

}  // namespace kcenter
