#pragma once

#include <cstdint>
#include <vector>

#include "kcenter/core.hpp"

namespace kcenter {

struct GAParams {
  std::size_t population = 25;
  std::size_t generations = 80;
  std::size_t tournament = 2;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  std::size_t elitism = 1;
};

// Genetic algorithm over center lists (one-point crossover, single-gene
// replacement mutation, tournament selection, elitism). Under the node
// constraint genes are vertex indices; under free they are plane points.
// The returned solution is the best individual ever seen. If
// incumbent_trace is non-null it receives that best-so-far max distance
// after the initial population and after every generation, a sequence that
// never increases.
Solution ga(const Scenario& scenario, std::size_t k,
            PlacementConstraint constraint, const GAParams& params,
            std::uint64_t seed, std::vector<double>* incumbent_trace = nullptr);

struct SAParams {
  double t0 = 0.0;        // 0 picks bounding-box diagonal / 4
  double cooling = 0.995; // geometric factor applied every step
  std::size_t steps = 20000;
};

// Simulated annealing with Metropolis acceptance on the max distance.
// A step relocates one random center: to a random vertex under node, by a
// Gaussian displacement with sigma = current temperature under free. The
// returned solution is the best state ever visited, and incumbent_trace
// (when non-null) records the best-so-far value per step.
Solution sa(const Scenario& scenario, std::size_t k,
            PlacementConstraint constraint, std::uint64_t seed,
            const SAParams& params = {},
            std::vector<double>* incumbent_trace = nullptr);

}  // namespace kcenter
