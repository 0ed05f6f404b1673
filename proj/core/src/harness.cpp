#include "kcenter/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "kcenter/baselines.hpp"
#include "kcenter/rng.hpp"
#include "kcenter/scenario_io.hpp"

namespace kcenter::harness {

namespace {

// Runs fn(0..count-1) on up to `jobs` threads. Tasks are claimed from an
// atomic counter and write to index-addressed slots, so the outcome is the
// same no matter how many workers run. The first exception wins and is
// rethrown on the calling thread.
void run_indexed(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs < 1) {
    throw std::invalid_argument("jobs must be >= 1");
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void check_k_values(const std::vector<std::size_t>& k_values, std::size_t n) {
  if (k_values.empty()) {
    throw std::invalid_argument("k values must be non-empty");
  }
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] == 0 || (i > 0 && k_values[i] <= k_values[i - 1])) {
      throw std::invalid_argument("k values must be strictly increasing and positive");
    }
  }
  if (k_values.back() > n) {
    throw std::invalid_argument("largest k (" + std::to_string(k_values.back()) +
                                ") exceeds scenario size " + std::to_string(n));
  }
}

double max_distance(const Scenario& scenario, const Solution& sol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    worst = std::max(worst, distance(scenario.vertices[i],
                                     sol.centers[sol.assignment[i]]));
  }
  return worst;
}

}  // namespace

Scenario generate_uniform(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("generate_uniform: n must be > 0");
  }
  Rng rng(seed);
  Scenario s;
  s.name = "uniform-n" + std::to_string(n) + "-s" + std::to_string(seed);
  s.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, 100.0);
    const double y = rng.uniform(0.0, 100.0);
    s.vertices.push_back({x, y});
  }
  return s;
}

Scenario generate_clustered(std::size_t n, std::size_t blobs, double spread,
                            std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("generate_clustered: n must be > 0");
  }
  if (blobs == 0) {
    throw std::invalid_argument("generate_clustered: blobs must be >= 1");
  }
  if (!(spread >= 0.0)) {
    throw std::invalid_argument("generate_clustered: spread must be >= 0");
  }
  Rng rng(seed);
  Scenario s;
  s.name = "clustered-n" + std::to_string(n) + "-b" + std::to_string(blobs) + "-s" +
           std::to_string(seed);
  std::vector<Point> anchors;
  anchors.reserve(blobs);
  for (std::size_t b = 0; b < blobs; ++b) {
    const double x = rng.uniform(0.0, 100.0);
    const double y = rng.uniform(0.0, 100.0);
    anchors.push_back({x, y});
  }
  const auto clamp01 = [](double v) { return std::min(std::max(v, 0.0), 100.0); };
  s.vertices.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = anchors[rng.uniform_index(blobs)];
    const double x = clamp01(a.x + rng.gaussian() * spread);
    const double y = clamp01(a.y + rng.gaussian() * spread);
    s.vertices.push_back({x, y});
  }
  return s;
}

bool node_only(const std::string& algo) {
  return algo == "monte" || algo == "2approx" || algo == "greedy" ||
         algo == "grasp" || algo == "brute";
}

std::string AlgorithmConfig::label() const {
  return algo + (constraint.kind == Placement::kNode ? ":node" : ":free");
}

AlgorithmConfig parse_algo_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string algo = spec.substr(0, colon);
  static const char* known[] = {"monte", "2approx", "kmeans", "greedy", "grasp",
                                "ga",    "sa",      "dragoon", "brute"};
  if (std::find_if(std::begin(known), std::end(known), [&](const char* id) {
        return algo == id;
      }) == std::end(known)) {
    throw std::invalid_argument("unknown algorithm '" + algo + "'");
  }
  AlgorithmConfig config;
  config.algo = algo;
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(colon + 1);
    if (kind == "node") {
      config.constraint = PlacementConstraint::node();
    } else if (kind == "free") {
      config.constraint = PlacementConstraint::free_plane();
    } else {
      throw std::invalid_argument("unknown placement '" + kind + "' in '" + spec +
                                  "' (use node or free)");
    }
  }
  if (config.constraint.kind == Placement::kFree && node_only(algo)) {
    throw FeasibilityError(algo + " places centers on vertices only and cannot run under :free");
  }
  return config;
}

Solution run_algorithm(const Scenario& scenario, std::size_t k,
                       const AlgorithmConfig& config) {
  if (config.constraint.kind == Placement::kFree && node_only(config.algo)) {
    throw FeasibilityError(config.algo +
                           " places centers on vertices only and cannot run under the free constraint");
  }
  if (config.algo == "monte") {
    return monte_carlo(scenario, k, config.seed, config.trials);
  }
  if (config.algo == "2approx") {
    return two_approx(scenario, k, config.seed);
  }
  if (config.algo == "kmeans") {
    return kmeans(scenario, k, config.init, config.constraint, config.restarts,
                  config.seed, config.mapping);
  }
  if (config.algo == "greedy") {
    return greedy(scenario, k, config.backtrack);
  }
  if (config.algo == "grasp") {
    return grasp(scenario, k, config.seed, config.grasp);
  }
  if (config.algo == "ga") {
    return ga(scenario, k, config.constraint, config.ga, config.seed);
  }
  if (config.algo == "sa") {
    return sa(scenario, k, config.constraint, config.seed, config.sa);
  }
  if (config.algo == "dragoon") {
    return dragoon(scenario, k, config.constraint, config.dragoon);
  }
  if (config.algo == "brute") {
    return oracle::brute_force_node(scenario, k, config.budget);
  }
  throw std::invalid_argument("unknown algorithm '" + config.algo + "'");
}

std::vector<SweepRow> sweep_k(const Scenario& scenario, const AlgorithmConfig& config,
                              const std::vector<std::size_t>& k_values, int jobs) {
  validate(scenario);
  check_k_values(k_values, scenario.size());
  const Scenario norm = normalize(scenario);
  std::vector<SweepRow> rows(k_values.size());
  run_indexed(k_values.size(), jobs, [&](std::size_t i) {
    const Solution sol = run_algorithm(norm, k_values[i], config);
    rows[i].k = k_values[i];
    rows[i].report = evaluate(norm, sol);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0) {
      rows[i].improvement_pct = std::numeric_limits<double>::quiet_NaN();
    } else if (rows[i - 1].report.max > 0.0) {
      rows[i].improvement_pct =
          100.0 * (rows[i - 1].report.max - rows[i].report.max) / rows[i - 1].report.max;
    } else {
      rows[i].improvement_pct = 0.0;
    }
  }
  return rows;
}

SaturationResult saturation_point(const std::vector<SweepRow>& rows,
                                  double threshold_pct) {
  if (rows.empty()) {
    throw std::invalid_argument("saturation_point: no sweep rows");
  }
  // Last row whose improvement still reaches the threshold; everything
  // after it is below, so that row is the saturation point. A point must
  // have at least one row after it, otherwise nothing is saturated yet.
  std::size_t last_big = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].improvement_pct >= threshold_pct) last_big = i;
  }
  if (last_big + 1 < rows.size()) {
    return {rows[last_big].k, true};
  }
  return {rows.back().k, false};
}

std::vector<CompareCell> compare_algorithms(const std::vector<Scenario>& scenarios,
                                            const std::vector<AlgorithmConfig>& algorithms,
                                            const std::vector<std::size_t>& k_values,
                                            int jobs) {
  if (scenarios.empty() || algorithms.empty()) {
    throw std::invalid_argument("compare_algorithms: need at least one scenario and one algorithm");
  }
  std::size_t min_n = std::numeric_limits<std::size_t>::max();
  for (const Scenario& s : scenarios) {
    validate(s);
    min_n = std::min(min_n, s.size());
  }
  check_k_values(k_values, min_n);

  std::vector<Scenario> norm;
  norm.reserve(scenarios.size());
  for (const Scenario& s : scenarios) norm.push_back(normalize(s));

  const std::size_t S = norm.size();
  const std::size_t K = k_values.size();
  std::vector<ObjectiveReport> reports(algorithms.size() * K * S);
  run_indexed(reports.size(), jobs, [&](std::size_t t) {
    const std::size_t a = t / (K * S);
    const std::size_t ki = (t / S) % K;
    const std::size_t s = t % S;
    AlgorithmConfig cfg = algorithms[a];
    cfg.seed = derive_seed(cfg.seed, s);
    const Solution sol = run_algorithm(norm[s], k_values[ki], cfg);
    reports[t] = evaluate(norm[s], sol);
  });

  std::vector<CompareCell> cells;
  cells.reserve(algorithms.size() * K);
  for (std::size_t a = 0; a < algorithms.size(); ++a) {
    for (std::size_t ki = 0; ki < K; ++ki) {
      CompareCell cell;
      cell.algorithm = algorithms[a].label();
      cell.k = k_values[ki];
      for (std::size_t s = 0; s < S; ++s) {
        const ObjectiveReport& r = reports[a * K * S + ki * S + s];
        cell.mean_report.max += r.max;
        cell.mean_report.q95 += r.q95;
        cell.mean_report.median += r.median;
        cell.mean_report.mean += r.mean;
        cell.mean_report.sum += r.sum;
      }
      const double count = static_cast<double>(S);
      cell.mean_report.max /= count;
      cell.mean_report.q95 /= count;
      cell.mean_report.median /= count;
      cell.mean_report.mean /= count;
      cell.mean_report.sum /= count;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

DeviationTable free_vs_node(const std::vector<Scenario>& scenarios,
                            const std::vector<std::size_t>& k_values,
                            const DragoonParams& params,
                            std::size_t compensation_cap, int jobs) {
  if (scenarios.empty()) {
    throw std::invalid_argument("free_vs_node: need at least one scenario");
  }
  std::size_t min_n = std::numeric_limits<std::size_t>::max();
  for (const Scenario& s : scenarios) {
    validate(s);
    min_n = std::min(min_n, s.size());
  }
  check_k_values(k_values, min_n);

  std::vector<Scenario> norm;
  norm.reserve(scenarios.size());
  for (const Scenario& s : scenarios) norm.push_back(normalize(s));

  const std::size_t K = k_values.size();
  DeviationTable table;
  table.rows.resize(norm.size() * K);
  run_indexed(table.rows.size(), jobs, [&](std::size_t t) {
    const Scenario& s = norm[t / K];
    const std::size_t k = k_values[t % K];
    DeviationRow& row = table.rows[t];
    row.scenario = s.name;
    row.k = k;
    row.node_max = max_distance(s, dragoon(s, k, PlacementConstraint::node(), params));
    row.free_max =
        max_distance(s, dragoon(s, k, PlacementConstraint::free_plane(), params));
    row.deviation_pct = row.free_max > 0.0
                            ? 100.0 * (row.node_max - row.free_max) / row.free_max
                            : 0.0;
    // Node placements with extra centers until the free quality is matched.
    if (row.node_max <= row.free_max) {
      row.compensation = 0;
      row.compensation_found = true;
      return;
    }
    const std::size_t k_cap = std::min(s.size(), k + compensation_cap);
    for (std::size_t k2 = k + 1; k2 <= k_cap; ++k2) {
      const double m = max_distance(s, dragoon(s, k2, PlacementConstraint::node(), params));
      if (m <= row.free_max) {
        row.compensation = k2 - k;
        row.compensation_found = true;
        return;
      }
    }
    row.compensation = k_cap - k;
    row.compensation_found = false;
  });

  double dev_sum = 0.0;
  double comp_sum = 0.0;
  for (const DeviationRow& row : table.rows) {
    dev_sum += row.deviation_pct;
    comp_sum += static_cast<double>(row.compensation);
    table.worst_deviation_pct = std::max(table.worst_deviation_pct, row.deviation_pct);
    table.worst_compensation = std::max(table.worst_compensation, row.compensation);
  }
  table.mean_deviation_pct = dev_sum / static_cast<double>(table.rows.size());
  table.mean_compensation = comp_sum / static_cast<double>(table.rows.size());
  return table;
}

CostCurve cost_optimum(const Scenario& scenario, const AlgorithmConfig& config,
                       const CostModel& model,
                       const std::vector<std::size_t>& k_values, int jobs) {
  validate(scenario);
  check_k_values(k_values, scenario.size());
  if (!(model.setup_per_center >= 0.0) || !(model.operating_per_center >= 0.0) ||
      !(model.transport_per_distance >= 0.0)) {
    throw std::invalid_argument("cost_optimum: rates must be >= 0");
  }
  const Scenario norm = normalize(scenario);
  CostCurve curve;
  curve.rows.resize(k_values.size());
  run_indexed(k_values.size(), jobs, [&](std::size_t i) {
    const std::size_t k = k_values[i];
    const Solution sol = run_algorithm(norm, k, config);
    const ObjectiveReport report = evaluate(norm, sol);
    const double stat = model.basis == CostBasis::kSum ? report.sum : report.max;
    CostRow& row = curve.rows[i];
    row.k = k;
    row.transport = model.transport_per_distance * stat;
    row.operating =
        static_cast<double>(k) * (model.setup_per_center + model.operating_per_center);
    row.total = row.transport + row.operating;
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.rows.size(); ++i) {
    if (curve.rows[i].total < curve.rows[best].total) best = i;  // ties: smaller k
  }
  curve.best_k = curve.rows[best].k;
  return curve;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "k,max,q95,median,mean,improvement_pct\n";
  for (const SweepRow& row : rows) {
    out << row.k << ',' << format_double(row.report.max) << ','
        << format_double(row.report.q95) << ',' << format_double(row.report.median)
        << ',' << format_double(row.report.mean) << ',';
    if (!std::isnan(row.improvement_pct)) {
      out << format_double(row.improvement_pct);
    }
    out << '\n';
  }
  return out.str();
}

std::string compare_csv(const std::vector<CompareCell>& cells) {
  std::ostringstream out;
  out << "algorithm,k,mean_max,mean_q95,mean_median,mean_mean\n";
  for (const CompareCell& cell : cells) {
    out << cell.algorithm << ',' << cell.k << ',' << format_double(cell.mean_report.max)
        << ',' << format_double(cell.mean_report.q95) << ','
        << format_double(cell.mean_report.median) << ','
        << format_double(cell.mean_report.mean) << '\n';
  }
  return out.str();
}

std::string deviation_csv(const DeviationTable& table) {
  std::ostringstream out;
  out << "scenario,k,node_max,free_max,deviation_pct,compensation,compensation_found\n";
  for (const DeviationRow& row : table.rows) {
    out << row.scenario << ',' << row.k << ',' << format_double(row.node_max) << ','
        << format_double(row.free_max) << ',' << format_double(row.deviation_pct)
        << ',' << row.compensation << ',' << (row.compensation_found ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::string cost_csv(const CostCurve& curve) {
  std::ostringstream out;
  out << "k,transport,operating,total\n";
  for (const CostRow& row : curve.rows) {
    out << row.k << ',' << format_double(row.transport) << ','
        << format_double(row.operating) << ',' << format_double(row.total) << '\n';
  }
  return out.str();
}

}  // namespace kcenter::harness
