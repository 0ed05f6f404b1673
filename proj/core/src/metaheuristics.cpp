#include "kcenter/metaheuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

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

double max_d2_of(const Scenario& scenario, const std::vector<Point>& centers) {
  double worst = 0.0;
  for (const Point v : scenario.vertices) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point c : centers) {
      nearest = std::min(nearest, distance_sq(v, c));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

std::vector<Point> random_centers(const Scenario& scenario, std::size_t k,
                                  Placement kind, const BoundingBox& box, Rng& rng) {
  std::vector<Point> centers;
  centers.reserve(k);
  if (kind == Placement::kNode) {
    for (const std::size_t i : sample_indices(rng, scenario.size(), k)) {
      centers.push_back(scenario.vertices[i]);
    }
  } else {
    for (std::size_t j = 0; j < k; ++j) {
      const double x = rng.uniform(box.min.x, box.max.x);
      const double y = rng.uniform(box.min.y, box.max.y);
      centers.push_back({x, y});
    }
  }
  return centers;
}

}  // namespace

Solution ga(const Scenario& scenario, std::size_t k,
            PlacementConstraint constraint, const GAParams& params,
            std::uint64_t seed, std::vector<double>* incumbent_trace) {
  check_k(scenario, k);
  if (params.population < 2) {
    throw std::invalid_argument("ga: population must be at least 2");
  }
  if (params.tournament == 0 || params.tournament > params.population) {
    throw std::invalid_argument("ga: tournament size must be in [1, population]");
  }
  if (params.elitism >= params.population) {
    throw std::invalid_argument("ga: elitism must leave room for offspring");
  }
  if (!(params.crossover_rate >= 0.0 && params.crossover_rate <= 1.0) ||
      !(params.mutation_rate >= 0.0 && params.mutation_rate <= 1.0)) {
    throw std::invalid_argument("ga: rates must be in [0, 1]");
  }

  const auto& vs = scenario.vertices;
  const BoundingBox box = bounding_box(scenario);
  const bool node = constraint.kind == Placement::kNode;
  Rng rng(seed);
  if (incumbent_trace) incumbent_trace->clear();

  std::vector<std::vector<Point>> population;
  population.reserve(params.population);
  for (std::size_t p = 0; p < params.population; ++p) {
    population.push_back(random_centers(scenario, k, constraint.kind, box, rng));
  }
  std::vector<double> fitness(params.population);
  const auto evaluate_population = [&] {
    for (std::size_t p = 0; p < params.population; ++p) {
      fitness[p] = max_d2_of(scenario, population[p]);
    }
  };
  evaluate_population();

  std::vector<Point> best_genome;
  double best_d2 = std::numeric_limits<double>::infinity();
  const auto update_best = [&] {
    for (std::size_t p = 0; p < params.population; ++p) {
      if (fitness[p] < best_d2) {  // strict: earlier individuals win ties
        best_d2 = fitness[p];
        best_genome = population[p];
      }
    }
    if (incumbent_trace) incumbent_trace->push_back(std::sqrt(best_d2));
  };
  update_best();

  // Winner of one tournament: lowest fitness among `tournament` uniform
  // draws (with replacement), ties toward the lower population index.
  const auto select_parent = [&]() -> const std::vector<Point>& {
    std::size_t winner = rng.uniform_index(params.population);
    for (std::size_t t = 1; t < params.tournament; ++t) {
      const std::size_t rival = rng.uniform_index(params.population);
      if (fitness[rival] < fitness[winner] ||
          (fitness[rival] == fitness[winner] && rival < winner)) {
        winner = rival;
      }
    }
    return population[winner];
  };

  std::vector<std::size_t> order(params.population);
  for (std::size_t gen = 0; gen < params.generations; ++gen) {
    for (std::size_t p = 0; p < params.population; ++p) order[p] = p;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return fitness[a] != fitness[b] ? fitness[a] < fitness[b] : a < b;
    });
    std::vector<std::vector<Point>> next;
    next.reserve(params.population);
    for (std::size_t e = 0; e < params.elitism; ++e) {
      next.push_back(population[order[e]]);
    }
    while (next.size() < params.population) {
      const std::vector<Point>& p1 = select_parent();
      const std::vector<Point>& p2 = select_parent();
      std::vector<Point> child;
      if (rng.uniform() < params.crossover_rate && k >= 2) {
        const std::size_t cut = 1 + rng.uniform_index(k - 1);
        child.assign(p1.begin(), p1.begin() + static_cast<std::ptrdiff_t>(cut));
        child.insert(child.end(), p2.begin() + static_cast<std::ptrdiff_t>(cut), p2.end());
      } else {
        child = p1;
      }
      if (rng.uniform() < params.mutation_rate) {
        const std::size_t gene = rng.uniform_index(k);
        if (node) {
          child[gene] = vs[rng.uniform_index(scenario.size())];
        } else {
          child[gene] = {rng.uniform(box.min.x, box.max.x),
                         rng.uniform(box.min.y, box.max.y)};
        }
      }
      next.push_back(std::move(child));
    }
    population = std::move(next);
    evaluate_population();
    update_best();
  }
  return make_solution(scenario, std::move(best_genome), constraint);
}

Solution sa(const Scenario& scenario, std::size_t k,
            PlacementConstraint constraint, std::uint64_t seed,
            const SAParams& params, std::vector<double>* incumbent_trace) {
  check_k(scenario, k);
  if (!(params.cooling > 0.0 && params.cooling < 1.0)) {
    throw std::invalid_argument("sa: cooling factor must be in (0, 1)");
  }
  if (params.t0 < 0.0) {
    throw std::invalid_argument("sa: t0 must be >= 0 (0 picks a default)");
  }

  const auto& vs = scenario.vertices;
  const BoundingBox box = bounding_box(scenario);
  const bool node = constraint.kind == Placement::kNode;
  Rng rng(seed);
  if (incumbent_trace) incumbent_trace->clear();

  detail::SwapEvaluator ev(scenario,
                           random_centers(scenario, k, constraint.kind, box, rng));
  std::vector<Point> best_centers = ev.centers();
  double best_d2 = ev.max_d2();
  double t = params.t0 > 0.0 ? params.t0 : box.diagonal() / 4.0;
  if (incumbent_trace) incumbent_trace->push_back(std::sqrt(best_d2));

  for (std::size_t step = 0; step < params.steps; ++step) {
    const std::size_t j = rng.uniform_index(k);
    Point q;
    if (node) {
      q = vs[rng.uniform_index(scenario.size())];
    } else {
      const Point c = ev.centers()[j];
      q = {c.x + rng.gaussian() * t, c.y + rng.gaussian() * t};
    }
    const double cand_d2 = ev.replace_max_d2(j, q);
    const double delta = std::sqrt(cand_d2) - std::sqrt(ev.max_d2());
    bool accept = delta <= 0.0;
    if (!accept) {
      accept = rng.uniform() < std::exp(-delta / t);
    }
    if (accept) {
      ev.commit_replace(j, q);
      if (ev.max_d2() < best_d2) {
        best_d2 = ev.max_d2();
        best_centers = ev.centers();
      }
    }
    t *= params.cooling;
    if (incumbent_trace) incumbent_trace->push_back(std::sqrt(best_d2));
  }
  return make_solution(scenario, std::move(best_centers), constraint);
}

}  // namespace kcenter
