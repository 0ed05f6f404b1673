#include "kcenter/greedy_grasp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "kcenter/rng.hpp"
#include "swap_eval.hpp"

namespace kcenter {

namespace {

void check_k(const Scenario& scenario, std::size_t k) {
  validate(scenario);
  if (k == 0 || k > scenario.size()) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(scenario.size()) +
                                "], got " + std::to_string(k));
  }
}

// Vertex minimizing the 1-center max objective (ties toward lower index).
std::size_t best_single_center(const Scenario& scenario) {
  const auto& vs = scenario.vertices;
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < vs.size(); ++v) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vs.size() && worst < best_d2; ++i) {
      worst = std::max(worst, distance_sq(vs[i], vs[v]));
    }
    if (worst < best_d2) {
      best_d2 = worst;
      best = v;
    }
  }
  return best;
}

// One relocation pass over all centers; returns true when any center moved.
// Relocating center j is judged by the global max after full reassignment,
// and kept only on strict improvement (candidate ties toward lower index).
bool relocation_pass(const Scenario& scenario, detail::SwapEvaluator& ev) {
  const auto& vs = scenario.vertices;
  bool changed = false;
  for (std::size_t j = 0; j < ev.center_count(); ++j) {
    std::size_t best_v = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const double d2 = ev.replace_max_d2(j, vs[v]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_v = v;
      }
    }
    if (best_d2 < ev.max_d2()) {
      ev.commit_replace(j, vs[best_v]);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

Solution greedy(const Scenario& scenario, std::size_t k, bool backtrack) {
  check_k(scenario, k);
  const auto& vs = scenario.vertices;
  detail::SwapEvaluator ev(scenario, {vs[best_single_center(scenario)]});
  while (ev.center_count() < k) {
    std::size_t best_v = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const double d2 = ev.add_max_d2(vs[v]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_v = v;
      }
    }
    ev.commit_add(vs[best_v]);
    if (backtrack) {
      while (relocation_pass(scenario, ev)) {
      }
    }
  }
  return make_solution(scenario, ev.centers(), PlacementConstraint::node());
}

Solution grasp(const Scenario& scenario, std::size_t k, std::uint64_t seed,
               const GraspParams& params) {
  check_k(scenario, k);
  if (params.iterations == 0) {
    throw std::invalid_argument("grasp: iterations must be > 0");
  }
  if (!(params.rcl_alpha >= 0.0 && params.rcl_alpha <= 1.0)) {
    throw std::invalid_argument("grasp: rcl_alpha must be in [0, 1]");
  }
  const auto& vs = scenario.vertices;
  const std::size_t n = scenario.size();

  std::vector<Point> best_centers;
  double best_d2 = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> candidates, rcl, untried;
  std::vector<double> obj(n);

  for (std::size_t iteration = 0; iteration < params.iterations; ++iteration) {
    Rng rng(derive_seed(seed, iteration));

    // Randomized construction: each step scores every unselected vertex by
    // the global max it would leave, keeps the value band
    // [best, best + alpha * (worst - best)] and draws uniformly from it.
    std::vector<bool> selected(n, false);
    std::optional<detail::SwapEvaluator> ev;
    for (std::size_t step = 0; step < k; ++step) {
      candidates.clear();
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < n; ++v) {
        if (selected[v]) continue;
        double worst;
        if (!ev) {
          worst = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, distance_sq(vs[i], vs[v]));
          }
        } else {
          worst = ev->add_max_d2(vs[v]);
        }
        obj[v] = std::sqrt(worst);
        candidates.push_back(v);
        lo = std::min(lo, obj[v]);
        hi = std::max(hi, obj[v]);
      }
      const double threshold = lo + params.rcl_alpha * (hi - lo);
      rcl.clear();
      for (const std::size_t v : candidates) {
        if (obj[v] <= threshold) rcl.push_back(v);
      }
      const std::size_t pick = rcl[rng.uniform_index(rcl.size())];
      selected[pick] = true;
      if (!ev) {
        ev.emplace(scenario, std::vector<Point>{vs[pick]});
      } else {
        ev->commit_add(vs[pick]);
      }
    }

    // Relocation local search: visit centers in random order; a center with
    // no strictly improving relocation is set aside, any accepted move puts
    // the other centers back in play. The mover itself stays aside: its
    // relocation scan does not depend on its own position, so re-scanning
    // it immediately could only rediscover the move just taken.
    untried.resize(k);
    for (std::size_t j = 0; j < k; ++j) untried[j] = j;
    while (!untried.empty()) {
      const std::size_t pos = rng.uniform_index(untried.size());
      const std::size_t j = untried[pos];
      std::size_t best_v = 0;
      double move_d2 = std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < n; ++v) {
        const double d2 = ev->replace_max_d2(j, vs[v]);
        if (d2 < move_d2) {
          move_d2 = d2;
          best_v = v;
        }
      }
      if (move_d2 < ev->max_d2()) {
        ev->commit_replace(j, vs[best_v]);
        untried.clear();
        for (std::size_t o = 0; o < k; ++o) {
          if (o != j) untried.push_back(o);
        }
      } else {
        untried.erase(untried.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    }

    if (ev->max_d2() < best_d2) {  // strict: earlier iterations win ties
      best_d2 = ev->max_d2();
      best_centers = ev->centers();
    }
  }
  return make_solution(scenario, std::move(best_centers), PlacementConstraint::node());
}

}  // namespace kcenter
