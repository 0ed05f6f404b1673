#include "kcenter/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kcenter/rng.hpp"

namespace kcenter {

namespace {

void check_k(const Scenario& scenario, std::size_t k) {
  validate(scenario);
  if (k == 0 || k > scenario.size()) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(scenario.size()) +
                                "], got " + std::to_string(k));
  }
}

std::size_t nearest_vertex(const Scenario& scenario, Point p) {
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    const double d2 = distance_sq(scenario.vertices[i], p);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<Point> kmeans_init(const Scenario& scenario, std::size_t k,
                               KMeansInit method, std::uint64_t seed) {
  check_k(scenario, k);
  Rng rng(seed);
  const auto& vs = scenario.vertices;
  std::vector<Point> centers;
  centers.reserve(k);
  switch (method) {
    case KMeansInit::kMacQueen: {
      for (const std::size_t i : sample_indices(rng, scenario.size(), k)) {
        centers.push_back(vs[i]);
      }
      break;
    }
    case KMeansInit::kLloyd: {
      const BoundingBox box = bounding_box(scenario);
      for (std::size_t j = 0; j < k; ++j) {
        const double x = rng.uniform(box.min.x, box.max.x);
        const double y = rng.uniform(box.min.y, box.max.y);
        centers.push_back({x, y});
      }
      break;
    }
    case KMeansInit::kPlusPlus: {
      std::vector<bool> chosen(scenario.size(), false);
      std::vector<double> near_d2(scenario.size(),
                                  std::numeric_limits<double>::infinity());
      const auto take = [&](std::size_t i) {
        chosen[i] = true;
        centers.push_back(vs[i]);
        for (std::size_t v = 0; v < scenario.size(); ++v) {
          near_d2[v] = std::min(near_d2[v], distance_sq(vs[v], vs[i]));
        }
      };
      take(rng.uniform_index(scenario.size()));
      while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t v = 0; v < scenario.size(); ++v) {
          if (!chosen[v]) total += near_d2[v];
        }
        if (total <= 0.0) {
          // Every remaining vertex duplicates a chosen one; weighted
          // sampling has no mass left, fall back to the lowest free index.
          for (std::size_t v = 0; v < scenario.size(); ++v) {
            if (!chosen[v]) {
              take(v);
              break;
            }
          }
          continue;
        }
        const double threshold = rng.uniform() * total;
        double cum = 0.0;
        std::size_t pick = scenario.size();
        for (std::size_t v = 0; v < scenario.size(); ++v) {
          if (chosen[v]) continue;
          cum += near_d2[v];
          if (cum > threshold) {
            pick = v;
            break;
          }
        }
        if (pick == scenario.size()) {
          // Rounding pushed the threshold past the final mass; take the
          // last unchosen vertex.
          for (std::size_t v = scenario.size(); v-- > 0;) {
            if (!chosen[v]) {
              pick = v;
              break;
            }
          }
        }
        take(pick);
      }
      break;
    }
  }
  return centers;
}

Solution kmeans_run(const Scenario& scenario, std::vector<Point> init,
                    const KMeansOptions& options,
                    std::vector<double>* sse_trace) {
  check_k(scenario, init.size());
  if (options.max_iterations == 0) {
    throw std::invalid_argument("kmeans_run: max_iterations must be > 0");
  }
  const auto& vs = scenario.vertices;
  const std::size_t n = scenario.size();
  const std::size_t k = init.size();
  const bool node = options.constraint.kind == Placement::kNode;
  std::vector<Point> centers = std::move(init);
  if (sse_trace) sse_trace->clear();

  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const std::vector<std::size_t> membership = assign(scenario, centers);
    std::vector<double> sum_x(k, 0.0), sum_y(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum_x[membership[i]] += vs[i].x;
      sum_y[membership[i]] += vs[i].y;
      ++count[membership[i]];
    }
    std::vector<Point> updated(k);
    std::vector<bool> taken(n, false);
    for (std::size_t j = 0; j < k; ++j) {
      if (count[j] > 0) {
        updated[j] = {sum_x[j] / static_cast<double>(count[j]),
                      sum_y[j] / static_cast<double>(count[j])};
        continue;
      }
      // Empty cluster: re-seed to the vertex farthest from its assigned
      // center, skipping vertices already claimed by an earlier re-seed in
      // this same update.
      std::size_t far = n;
      double far_d2 = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        const double d2 = distance_sq(vs[i], centers[membership[i]]);
        if (d2 > far_d2) {
          far_d2 = d2;
          far = i;
        }
      }
      taken[far] = true;
      updated[j] = vs[far];
    }
    if (node && options.mapping == SnapPolicy::kEveryStep) {
      for (Point& c : updated) {
        c = vs[nearest_vertex(scenario, c)];
      }
    }
    double moved = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      moved = std::max(moved, distance(centers[j], updated[j]));
    }
    centers = std::move(updated);
    if (sse_trace) {
      double sse = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sse += distance_sq(vs[i], centers[membership[i]]);
      }
      sse_trace->push_back(sse);
    }
    if (moved <= options.tolerance) break;
  }

  if (node && options.mapping == SnapPolicy::kAtEnd) {
    for (Point& c : centers) {
      c = vs[nearest_vertex(scenario, c)];
    }
  }
  return make_solution(scenario, std::move(centers), options.constraint);
}

Solution kmeans(const Scenario& scenario, std::size_t k, KMeansInit method,
                PlacementConstraint constraint, std::size_t restarts,
                std::uint64_t seed, SnapPolicy mapping) {
  check_k(scenario, k);
  if (restarts == 0) {
    throw std::invalid_argument("kmeans: restarts must be > 0");
  }
  KMeansOptions options;
  options.constraint = constraint;
  options.mapping = mapping;
  Solution best;
  double best_max_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    auto init = kmeans_init(scenario, k, method, derive_seed(seed, r));
    Solution sol = kmeans_run(scenario, std::move(init), options);
    double worst = 0.0;
    for (std::size_t i = 0; i < scenario.size(); ++i) {
      worst = std::max(worst, distance_sq(scenario.vertices[i],
                                          sol.centers[sol.assignment[i]]));
    }
    if (worst < best_max_d2) {  // strict: earlier restarts win ties
      best_max_d2 = worst;
      best = std::move(sol);
    }
  }
  return best;
}

}  // namespace kcenter
