// kcenter: scenario generation, single solves, and the experiment harness
// (sweep / compare / deviation / cost) behind one executable.
//
// Exit codes: 0 computation completed, 2 usage or input error, 3 the request
// was well-formed but infeasible (enumeration budget, node-only algorithm
// under the free constraint). Diagnostics go to stderr; data to stdout and
// the requested output files.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "kcenter/core.hpp"
#include "kcenter/harness.hpp"
#include "kcenter/oracle.hpp"
#include "kcenter/scenario_io.hpp"

namespace {

using namespace kcenter;

// "5", "1,2,5", "1:8" and "5:50:5" (inclusive, positive step). Harness-side
// validation still applies: the merged list must be strictly increasing.
std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  const auto parse_number = [&](const std::string& token) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse k value '" + token + "'");
    }
    if (used != token.size()) {
      throw std::invalid_argument("cannot parse k value '" + token + "'");
    }
    return static_cast<std::size_t>(v);
  };
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    if (token.empty()) {
      throw std::invalid_argument("empty k entry in '" + text + "'");
    }
    const std::size_t c1 = token.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_number(token));
    } else {
      const std::size_t c2 = token.find(':', c1 + 1);
      const std::size_t lo = parse_number(token.substr(0, c1));
      const std::size_t hi = parse_number(
          token.substr(c1 + 1, (c2 == std::string::npos ? token.size() : c2) - c1 - 1));
      const std::size_t step =
          c2 == std::string::npos ? 1 : parse_number(token.substr(c2 + 1));
      if (step == 0 || lo > hi) {
        throw std::invalid_argument("bad k range '" + token + "'");
      }
      for (std::size_t k = lo; k <= hi; k += step) out.push_back(k);
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    if (!token.empty()) out.push_back(token);
    pos = comma + 1;
  }
  if (out.empty()) {
    throw std::invalid_argument("empty list '" + text + "'");
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

std::string trim_ws(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// Flat config grammar: one key=value per line, keys named after the
// subcommand's long options (no leading dashes), blank lines and full-line
// '#' comments skipped. No sections, no quoting; the value runs to the end
// of the line. A later duplicate of a key overrides the earlier one.
std::vector<std::pair<std::string, std::string>> read_config_pairs(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config file: " + path);
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim_ws(line);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t eq = text.find('=');
    const std::string key =
        eq == std::string::npos ? "" : trim_ws(text.substr(0, eq));
    if (key.empty()) {
      throw std::runtime_error("config file " + path + ": line " +
                               std::to_string(lineno) + ": expected key=value");
    }
    pairs.emplace_back(key, trim_ws(text.substr(eq + 1)));
  }
  return pairs;
}

// CLI11 reads config files only at the top level, and then wants sectioned
// keys to reach a subcommand, so the flat grammar is merged here instead:
// config pairs become trailing --key=value tokens before the parse, except
// where the command line already set the same option (explicit flags win,
// including either spelling of a negable flag). Unknown keys are an error.
void merge_config_into_args(const CLI::App& app, std::vector<std::string>& args) {
  if (args.empty()) return;
  const CLI::App* sub = app.get_subcommand_no_throw(args.front());
  if (sub == nullptr || sub->get_option_no_throw("--config") == nullptr) return;

  std::string config_path;
  std::set<const CLI::Option*> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.rfind("--", 0) != 0) continue;
    const std::string name = token.substr(0, std::min(token.find('='), token.size()));
    if (const CLI::Option* opt = sub->get_option_no_throw(name)) {
      given.insert(opt);
    }
    if (name != "--config") continue;
    if (token.size() > name.size()) {
      config_path = token.substr(name.size() + 1);
    } else if (i + 1 < args.size()) {
      config_path = args[++i];
    }
  }
  if (config_path.empty()) return;

  std::vector<std::pair<std::string, std::string>> merged;
  std::map<const CLI::Option*, std::size_t> slot;
  std::vector<std::string> unknown;
  for (const auto& [key, value] : read_config_pairs(config_path)) {
    const CLI::Option* opt =
        key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (opt == nullptr) {
      unknown.push_back(key);
      continue;
    }
    if (given.count(opt) != 0) continue;
    const auto [it, fresh] = slot.emplace(opt, merged.size());
    if (fresh) {
      merged.emplace_back(key, value);
    } else {
      merged[it->second] = {key, value};
    }
  }
  if (!unknown.empty()) {
    std::string msg = "config file " + config_path + ": unknown key";
    if (unknown.size() > 1) msg += 's';
    msg += ':';
    for (std::size_t i = 0; i < unknown.size(); ++i) {
      msg += (i == 0 ? " " : ", ") + unknown[i];
    }
    throw std::runtime_error(msg);
  }
  for (const auto& [key, value] : merged) {
    args.push_back("--" + key + "=" + value);
  }
}

// All tunables of every algorithm, wired straight into AlgorithmConfig.
// Each subcommand registers only the knobs that can matter to it.
struct AlgoFlags {
  std::string algo = "dragoon";
  std::string constraint;  // empty: whatever the algo spec / default says
  harness::AlgorithmConfig base;

  void register_common(CLI::App* cmd, bool fixed_algo = false) {
    if (!fixed_algo) {
      cmd->add_option("--algo", algo,
                      "monte|2approx|kmeans|greedy|grasp|ga|sa|dragoon|brute, "
                      "optionally ':node' or ':free'")
          ->capture_default_str();
    }
    cmd->add_option("--constraint", constraint, "node|free placement")
        ->check(CLI::IsMember({"node", "free"}));
    cmd->add_option("--seed", base.seed, "master random seed")
        ->envname("KCENTER_SEED")
        ->capture_default_str();
    cmd->add_option("--trials", base.trials, "monte: subsets sampled")
        ->capture_default_str();
    cmd->add_option("--restarts", base.restarts, "kmeans: independent restarts")
        ->capture_default_str();
    cmd->add_option("--init", base.init, "kmeans: seeding method")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, KMeansInit>{{"macqueen", KMeansInit::kMacQueen},
                                              {"lloyd", KMeansInit::kLloyd},
                                              {"plusplus", KMeansInit::kPlusPlus}}));
    cmd->add_option("--mapping", base.mapping,
                    "kmeans node runs: when centroids snap to vertices")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SnapPolicy>{{"atend", SnapPolicy::kAtEnd},
                                              {"everystep", SnapPolicy::kEveryStep}}));
    cmd->add_flag("--backtrack,!--no-backtrack", base.backtrack,
                  "greedy: relocation passes after each addition");
    cmd->add_option("--iterations", base.grasp.iterations, "grasp: rounds")
        ->capture_default_str();
    cmd->add_option("--alpha", base.grasp.rcl_alpha,
                    "grasp: candidate-list width in [0,1]")
        ->capture_default_str();
    cmd->add_option("--population", base.ga.population, "ga: population size")
        ->capture_default_str();
    cmd->add_option("--generations", base.ga.generations, "ga: generations")
        ->capture_default_str();
    cmd->add_option("--tournament", base.ga.tournament, "ga: tournament size")
        ->capture_default_str();
    cmd->add_option("--crossover", base.ga.crossover_rate, "ga: crossover rate")
        ->capture_default_str();
    cmd->add_option("--mutation", base.ga.mutation_rate, "ga: mutation rate")
        ->capture_default_str();
    cmd->add_option("--elitism", base.ga.elitism, "ga: elites kept per generation")
        ->capture_default_str();
    cmd->add_option("--t0", base.sa.t0, "sa: start temperature (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--cooling", base.sa.cooling, "sa: geometric cooling factor")
        ->capture_default_str();
    cmd->add_option("--steps", base.sa.steps, "sa: annealing steps")
        ->capture_default_str();
    register_dragoon(cmd, base.dragoon);
    cmd->add_option("--budget", base.budget, "brute: max subsets enumerated")
        ->capture_default_str();
  }

  static void register_dragoon(CLI::App* cmd, DragoonParams& params) {
    cmd->add_option("--eps0", params.eps0,
                    "dragoon free: initial grid spacing (0 = bbox/16)")
        ->capture_default_str();
    cmd->add_option("--eps-min", params.eps_min,
                    "dragoon free: final grid spacing")
        ->capture_default_str();
    cmd->add_option("--tie", params.tie, "dragoon: tiebreak statistic")
        ->transform(CLI::CheckedTransformer(std::map<std::string, TieCriterion>{
            {"mean", TieCriterion::kMean}, {"sum", TieCriterion::kSum}}));
    cmd->add_option("--grid-window", params.grid_window,
                    "dragoon free: half-width of the grid in steps")
        ->capture_default_str();
    cmd->add_flag("--exact-orientation", params.exact_orientation,
                  "dragoon: anchor the init at the enclosing-circle center");
  }

  harness::AlgorithmConfig resolve() const {
    const harness::AlgorithmConfig spec = harness::parse_algo_spec(algo);
    harness::AlgorithmConfig cfg = base;  // all tuned knobs
    cfg.algo = spec.algo;
    cfg.constraint = spec.constraint;
    if (constraint == "node") {
      cfg.constraint = PlacementConstraint::node();
    } else if (constraint == "free") {
      cfg.constraint = PlacementConstraint::free_plane();
    }
    if (cfg.constraint.kind == Placement::kFree && harness::node_only(cfg.algo)) {
      throw harness::FeasibilityError(
          cfg.algo + " places centers on vertices only and cannot run under --constraint free");
    }
    return cfg;
  }
};

std::string bool_word(bool v) { return v ? "true" : "false"; }

int run_generate(const std::string& kind, std::size_t n, std::uint64_t seed,
                 std::size_t blobs, double spread, const std::string& out) {
  const Scenario s = kind == "uniform"
                         ? harness::generate_uniform(n, seed)
                         : harness::generate_clustered(n, blobs, spread, seed);
  write_scenario_file(out, s);
  return 0;
}

int run_solve(const std::string& scenario_path, const AlgoFlags& flags,
              std::size_t k, const std::string& out) {
  const Scenario s = read_scenario_file(scenario_path);
  const harness::AlgorithmConfig cfg = flags.resolve();
  const Solution sol = harness::run_algorithm(s, k, cfg);
  const ObjectiveReport rep = evaluate(s, sol);
  if (!out.empty()) {
    write_text_file(out, solution_to_json(s, sol, rep));
  }
  std::cout << "max=" << format_double(rep.max) << '\n'
            << "q95=" << format_double(rep.q95) << '\n'
            << "median=" << format_double(rep.median) << '\n'
            << "mean=" << format_double(rep.mean) << '\n'
            << "sum=" << format_double(rep.sum) << '\n';
  return 0;
}

int run_sweep(const std::string& scenario_path, const AlgoFlags& flags,
              const std::string& k_text, double threshold, int jobs,
              const std::string& out) {
  const Scenario s = read_scenario_file(scenario_path);
  const auto rows =
      harness::sweep_k(s, flags.resolve(), parse_k_list(k_text), jobs);
  write_text_file(out, harness::sweep_csv(rows));
  const auto sat = harness::saturation_point(rows, threshold);
  std::cout << "saturation_k=" << sat.k << '\n'
            << "saturation_found=" << bool_word(sat.found) << '\n';
  return 0;
}

int run_compare(const std::string& scenarios_text, const std::string& algos_text,
                const std::string& k_text, std::uint64_t seed, int jobs,
                const std::string& out) {
  std::vector<Scenario> scenarios;
  for (const std::string& path : split_list(scenarios_text)) {
    scenarios.push_back(read_scenario_file(path));
  }
  std::vector<harness::AlgorithmConfig> algorithms;
  for (const std::string& spec : split_list(algos_text)) {
    harness::AlgorithmConfig cfg = harness::parse_algo_spec(spec);
    cfg.seed = seed;
    algorithms.push_back(std::move(cfg));
  }
  const auto cells =
      harness::compare_algorithms(scenarios, algorithms, parse_k_list(k_text), jobs);
  write_text_file(out, harness::compare_csv(cells));
  return 0;
}

int run_deviation(const std::string& scenarios_text, const std::string& k_text,
                  const DragoonParams& params, std::size_t cap, int jobs,
                  const std::string& out) {
  std::vector<Scenario> scenarios;
  for (const std::string& path : split_list(scenarios_text)) {
    scenarios.push_back(read_scenario_file(path));
  }
  const auto table =
      harness::free_vs_node(scenarios, parse_k_list(k_text), params, cap, jobs);
  write_text_file(out, harness::deviation_csv(table));
  std::cout << "mean_deviation_pct=" << format_double(table.mean_deviation_pct) << '\n'
            << "worst_deviation_pct=" << format_double(table.worst_deviation_pct)
            << '\n'
            << "mean_compensation=" << format_double(table.mean_compensation) << '\n'
            << "worst_compensation=" << table.worst_compensation << '\n';
  return 0;
}

int run_cost(const std::string& scenario_path, const AlgoFlags& flags,
             const std::string& k_text, const harness::CostModel& model, int jobs,
             const std::string& out) {
  const Scenario s = read_scenario_file(scenario_path);
  const auto curve = harness::cost_optimum(s, flags.resolve(), model,
                                           parse_k_list(k_text), jobs);
  write_text_file(out, harness::cost_csv(curve));
  std::cout << "k_star=" << curve.best_k << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-center placement toolkit", "kcenter"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random scenario file");
  std::string gen_kind = "uniform";
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::size_t gen_blobs = 5;
  double gen_spread = 5.0;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "uniform|clustered")
      ->check(CLI::IsMember({"uniform", "clustered"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "number of vertices")->required();
  gen->add_option("--seed", gen_seed, "generator seed")
      ->envname("KCENTER_SEED")
      ->capture_default_str();
  gen->add_option("--blobs", gen_blobs, "clustered: cluster count")
      ->capture_default_str();
  gen->add_option("--spread", gen_spread, "clustered: per-cluster std-dev")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "output scenario (.csv or .json)")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "run one algorithm on one scenario");
  std::string solve_scenario;
  std::size_t solve_k = 0;
  std::string solve_out;
  AlgoFlags solve_flags;
  solve->add_option("--scenario", solve_scenario, "scenario file")->required();
  solve->add_option("--k", solve_k, "number of centers")->required();
  solve->add_option("--out", solve_out, "solution JSON file");
  solve_flags.register_common(solve);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "objective statistics over a k range");
  std::string sweep_scenario;
  std::string sweep_k = "1:10";
  double sweep_threshold = 1.0;
  int sweep_jobs = 1;
  std::string sweep_out = "sweep.csv";
  AlgoFlags sweep_flags;
  sweep->add_option("--scenario", sweep_scenario, "scenario file")->required();
  sweep->add_option("--k", sweep_k, "k list: '1,2,5' or 'lo:hi[:step]'")
      ->capture_default_str();
  sweep->add_option("--saturation-threshold", sweep_threshold,
                    "improvement percent that still counts as progress")
      ->capture_default_str();
  sweep->add_option("--jobs", sweep_jobs, "worker threads")->capture_default_str();
  sweep->add_option("--out", sweep_out, "output CSV")->capture_default_str();
  sweep_flags.register_common(sweep);
  std::string sweep_config;
  sweep->add_option("--config", sweep_config,
                    "flat key=value file; explicit flags override it");

  // compare
  auto* compare = app.add_subcommand("compare", "algorithm grid over scenarios");
  std::string compare_scenarios;
  std::string compare_algos = "monte,2approx,grasp,dragoon,dragoon:free";
  std::string compare_k = "5,10,20,50";
  std::uint64_t compare_seed = 1;
  int compare_jobs = 1;
  std::string compare_out = "compare.csv";
  compare->add_option("--scenarios", compare_scenarios, "comma-separated scenario files")
      ->required();
  compare->add_option("--algos", compare_algos,
                      "comma-separated algo specs (id or id:constraint)")
      ->capture_default_str();
  compare->add_option("--k", compare_k, "k list: '1,2,5' or 'lo:hi[:step]'")
      ->capture_default_str();
  compare->add_option("--seed", compare_seed, "master seed (per-scenario sub-seeds)")
      ->envname("KCENTER_SEED")
      ->capture_default_str();
  compare->add_option("--jobs", compare_jobs, "worker threads")->capture_default_str();
  compare->add_option("--out", compare_out, "output CSV")->capture_default_str();
  std::string compare_config;
  compare->add_option("--config", compare_config,
                      "flat key=value file; explicit flags override it");

  // deviation
  auto* deviation = app.add_subcommand(
      "deviation", "free-vs-node gap of the refinement algorithm");
  std::string dev_scenarios;
  std::string dev_k = "5,10,20,50";
  std::size_t dev_cap = 32;
  int dev_jobs = 1;
  std::string dev_out = "deviation.csv";
  DragoonParams dev_params;
  deviation->add_option("--scenarios", dev_scenarios, "comma-separated scenario files")
      ->required();
  deviation->add_option("--k", dev_k, "k list: '1,2,5' or 'lo:hi[:step]'")
      ->capture_default_str();
  deviation->add_option("--cap", dev_cap, "max extra centers tried per row")
      ->capture_default_str();
  deviation->add_option("--jobs", dev_jobs, "worker threads")->capture_default_str();
  deviation->add_option("--out", dev_out, "output CSV")->capture_default_str();
  AlgoFlags::register_dragoon(deviation, dev_params);
  std::string dev_config;
  deviation->add_option("--config", dev_config,
                        "flat key=value file; explicit flags override it");

  // cost
  auto* cost = app.add_subcommand("cost", "total-cost curve and its optimum k");
  std::string cost_scenario;
  std::string cost_k = "1:20";
  harness::CostModel cost_model;
  std::string cost_basis = "sum";
  int cost_jobs = 1;
  std::string cost_out = "cost.csv";
  AlgoFlags cost_flags;
  cost->add_option("--scenario", cost_scenario, "scenario file")->required();
  cost->add_option("--k", cost_k, "k list: '1,2,5' or 'lo:hi[:step]'")
      ->capture_default_str();
  cost->add_option("--setup", cost_model.setup_per_center, "one-time cost per center")
      ->capture_default_str();
  cost->add_option("--operating", cost_model.operating_per_center,
                   "running cost per center")
      ->capture_default_str();
  cost->add_option("--transport", cost_model.transport_per_distance,
                   "cost per unit of the distance statistic")
      ->capture_default_str();
  cost->add_option("--basis", cost_basis, "distance statistic: sum|max")
      ->check(CLI::IsMember({"sum", "max"}))
      ->capture_default_str();
  cost->add_option("--jobs", cost_jobs, "worker threads")->capture_default_str();
  cost->add_option("--out", cost_out, "output CSV")->capture_default_str();
  cost_flags.register_common(cost);
  std::string cost_config;
  cost->add_option("--config", cost_config,
                   "flat key=value file; explicit flags override it");

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    merge_config_into_args(app, args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      return run_generate(gen_kind, gen_n, gen_seed, gen_blobs, gen_spread, gen_out);
    }
    if (solve->parsed()) {
      return run_solve(solve_scenario, solve_flags, solve_k, solve_out);
    }
    if (sweep->parsed()) {
      return run_sweep(sweep_scenario, sweep_flags, sweep_k, sweep_threshold,
                       sweep_jobs, sweep_out);
    }
    if (compare->parsed()) {
      return run_compare(compare_scenarios, compare_algos, compare_k, compare_seed,
                         compare_jobs, compare_out);
    }
    if (deviation->parsed()) {
      return run_deviation(dev_scenarios, dev_k, dev_params, dev_cap, dev_jobs,
                           dev_out);
    }
    if (cost->parsed()) {
      cost_model.basis = cost_basis == "sum" ? harness::CostBasis::kSum
                                             : harness::CostBasis::kMax;
      return run_cost(cost_scenario, cost_flags, cost_k, cost_model, cost_jobs,
                      cost_out);
    }
  } catch (const harness::FeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const kcenter::oracle::EnumerationBudgetError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}
