#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcenter/clustering.hpp"
#include "kcenter/core.hpp"
#include "kcenter/dragoon.hpp"
#include "kcenter/greedy_grasp.hpp"
#include "kcenter/metaheuristics.hpp"
#include "kcenter/oracle.hpp"

namespace kcenter::harness {

// A structurally valid request the chosen method cannot serve, e.g. a
// node-only algorithm under the free constraint, or an exact enumeration
// larger than its budget. Distinct from std::invalid_argument so callers
// can exit differently on "bad input" vs "infeasible request".
class FeasibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n vertices uniform in [0,100] x [0,100].
Scenario generate_uniform(std::size_t n, std::uint64_t seed);

// n vertices drawn around `blobs` Gaussian clusters (sigma = spread) whose
// centers are uniform in [0,100] x [0,100]; each point picks its blob
// uniformly at random and is clamped back into the square.
Scenario generate_clustered(std::size_t n, std::size_t blobs, double spread,
                            std::uint64_t seed);

// Everything needed to run one algorithm; `algo` uses the CLI identifiers:
// monte | 2approx | kmeans | greedy | grasp | ga | sa | dragoon | brute.
// Fields beyond `algo`, `constraint` and `seed` only matter to the
// algorithms that read them.
struct AlgorithmConfig {
  std::string algo = "dragoon";
  PlacementConstraint constraint;
  std::uint64_t seed = 1;

  std::uint64_t trials = 1000;                       // monte
  std::size_t restarts = 10;                         // kmeans
  KMeansInit init = KMeansInit::kMacQueen;           // kmeans
  SnapPolicy mapping = SnapPolicy::kAtEnd;           // kmeans
  bool backtrack = true;                             // greedy
  GraspParams grasp;
  GAParams ga;
  SAParams sa;
  DragoonParams dragoon;
  std::uint64_t budget = oracle::kDefaultEnumerationBudget;  // brute

  // "dragoon:free", "kmeans:node", ... (the CLI algo-spec syntax).
  std::string label() const;
};

// Parses "algo" or "algo:constraint" into a config with default knobs.
// Rejects unknown identifiers (std::invalid_argument) and node-only
// algorithms combined with :free (FeasibilityError).
AlgorithmConfig parse_algo_spec(const std::string& spec);

// True for algorithms whose placement is inherently vertex-restricted.
bool node_only(const std::string& algo);

// Runs one algorithm on one scenario. The scenario is taken as given (not
// normalized here); feasibility (k <= n, constraint supported) is checked
// before dispatch.
Solution run_algorithm(const Scenario& scenario, std::size_t k,
                       const AlgorithmConfig& config);

struct SweepRow {
  std::size_t k = 0;
  ObjectiveReport report;
  // Relative drop of max versus the previous row, in percent; NaN on the
  // first row (the CSV emitter leaves the field empty there).
  double improvement_pct = 0.0;
};

// Runs config per k on the normalized scenario. k_values must be strictly
// increasing and end at most at n. The master seed is reused unchanged for
// every k, which preserves prefix properties of seeded algorithms across
// the sweep. jobs > 1 distributes the k values over threads; row order and
// content do not depend on it.
std::vector<SweepRow> sweep_k(const Scenario& scenario,
                              const AlgorithmConfig& config,
                              const std::vector<std::size_t>& k_values,
                              int jobs = 1);

struct SaturationResult {
  std::size_t k = 0;
  bool found = false;
};

// Smallest k in the sweep after which every subsequent improvement stays
// below threshold_pct. When even the tail keeps improving, found is false
// and k reports the last row's k.
SaturationResult saturation_point(const std::vector<SweepRow>& rows,
                                  double threshold_pct = 1.0);

struct CompareCell {
  std::string algorithm;  // AlgorithmConfig::label()
  std::size_t k = 0;
  ObjectiveReport mean_report;  // each statistic averaged across the scenarios
};

// Cross product algorithms x k_values, averaged over the normalized
// scenarios. Scenario s runs with sub-seed derive_seed(config.seed, s).
std::vector<CompareCell> compare_algorithms(
    const std::vector<Scenario>& scenarios,
    const std::vector<AlgorithmConfig>& algorithms,
    const std::vector<std::size_t>& k_values, int jobs = 1);

struct DeviationRow {
  std::string scenario;
  std::size_t k = 0;
  double node_max = 0.0;
  double free_max = 0.0;
  double deviation_pct = 0.0;     // 100 * (node - free) / free, 0 when free == 0
  std::size_t compensation = 0;   // extra centers until node_max(k') <= free_max(k)
  bool compensation_found = false;
};

struct DeviationTable {
  std::vector<DeviationRow> rows;
  double mean_deviation_pct = 0.0;
  double worst_deviation_pct = 0.0;
  double mean_compensation = 0.0;
  std::size_t worst_compensation = 0;
};

// Node-vs-free gap of the deterministic refinement algorithm across
// normalized scenarios and k values, and how many extra node centers close
// it. The compensation search is capped at compensation_cap extra centers
// (and at k' = n); rows that hit the cap report compensation_found = false.
DeviationTable free_vs_node(const std::vector<Scenario>& scenarios,
                            const std::vector<std::size_t>& k_values,
                            const DragoonParams& params = {},
                            std::size_t compensation_cap = 32, int jobs = 1);

enum class CostBasis { kSum, kMax };

// total(k) = k * (setup + operating) + transport * stat(k), where stat is
// the solution's distance sum or max per `basis`.
struct CostModel {
  double setup_per_center = 0.0;
  double operating_per_center = 0.0;
  double transport_per_distance = 1.0;
  CostBasis basis = CostBasis::kSum;
};

struct CostRow {
  std::size_t k = 0;
  double transport = 0.0;
  double operating = 0.0;  // k * (setup + operating)
  double total = 0.0;
};

struct CostCurve {
  std::vector<CostRow> rows;
  std::size_t best_k = 0;  // argmin of total over the rows, ties to smaller k
};

CostCurve cost_optimum(const Scenario& scenario, const AlgorithmConfig& config,
                       const CostModel& model,
                       const std::vector<std::size_t>& k_values, int jobs = 1);

// CSV emitters. Headers are part of the output contract; all numbers go
// through format_double, so equal inputs produce equal bytes.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string compare_csv(const std::vector<CompareCell>& cells);
std::string deviation_csv(const DeviationTable& table);
std::string cost_csv(const CostCurve& curve);

}  // namespace kcenter::harness
