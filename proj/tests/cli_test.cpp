// End-to-end checks of the installed binary: exit codes, stdout contracts,
// file outputs, config merging, and the KCENTER_SEED environment hook.
// KCENTER_CLI_PATH is injected by CMake and points at the built executable.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "kcenter/core.hpp"
#include "kcenter/harness.hpp"
#include "kcenter/oracle.hpp"
#include "kcenter/scenario_io.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace kcenter;

namespace {

struct CliResult {
  int code = -1;
  std::string text;  // stdout and stderr, merged
};

CliResult run_cmd(const std::string& cmd) {
  CliResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
    r.text.append(buf, got);
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

CliResult run_cli(const std::string& args) {
  return run_cmd(std::string(KCENTER_CLI_PATH) + " " + args);
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("kcenter_cli_test_" + std::to_string(getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string scratch(const std::string& name) {
  return (scratch_dir() / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "missing file: " << path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(bool(out));
  out << text;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

// field extraction for asserting on one CSV column
std::string field(const std::string& line, std::size_t index) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < index; ++i) {
    pos = line.find(',', pos);
    REQUIRE(pos != std::string::npos);
    ++pos;
  }
  return line.substr(pos, line.find(',', pos) - pos);
}

std::string square_csv() {
  static const std::string path = [] {
    std::string p = scratch("square.csv");
    write_scenario_file(p, kctest::square10());
    return p;
  }();
  return path;
}

std::string uniform_csv(const std::string& name, std::size_t n, std::uint64_t seed) {
  std::string p = scratch(name);
  write_scenario_file(p, harness::generate_uniform(n, seed));
  return p;
}

}  // namespace

TEST_CASE("generate writes the scenario deterministically") {
  const std::string out1 = scratch("gen1.csv");
  const std::string out2 = scratch("gen2.csv");
  CliResult r = run_cli("generate --n 12 --seed 5 --out " + out1);
  CHECK(r.code == 0);
  CHECK(run_cli("generate --n 12 --seed 5 --out " + out2).code == 0);
  const std::string body = read_file(out1);
  CHECK(count_lines(body) == 13);  // header + 12 vertices
  CHECK(body.rfind("id,x,y\n", 0) == 0);
  CHECK(body == read_file(out2));

  const Scenario s = read_scenario_file(out1);
  CHECK(s.size() == 12);
}

TEST_CASE("generate rejects empty scenarios and missing arguments") {
  CliResult r = run_cli("generate --n 0 --out " + scratch("gen0.csv"));
  CHECK(r.code == 2);
  CHECK(run_cli("generate --n 5").code == 2);  // --out is required
}

TEST_CASE("solve prints the objective statistics for the square") {
  CliResult r = run_cli("solve --scenario " + square_csv() +
                        " --algo dragoon --k 2 --constraint node");
  CHECK(r.code == 0);
  CHECK(r.text.find("max=10\n") != std::string::npos);
  CHECK(r.text.find("q95=10\n") != std::string::npos);
  CHECK(r.text.find("median=0\n") != std::string::npos);
  CHECK(r.text.find("mean=5\n") != std::string::npos);
  CHECK(r.text.find("sum=20\n") != std::string::npos);
}

TEST_CASE("solve --out writes a parseable solution file") {
  const std::string out = scratch("sol.json");
  CliResult r = run_cli("solve --scenario " + square_csv() +
                        " --algo dragoon --k 2 --constraint node --out " + out);
  CHECK(r.code == 0);
  const nlohmann::json doc = nlohmann::json::parse(read_file(out));
  CHECK(doc.at("k").get<std::size_t>() == 2);
  CHECK(doc.at("constraint").get<std::string>() == "node");
  CHECK(doc.at("objective").at("max").get<double>() == doctest::Approx(10.0));
  CHECK(doc.at("centers").size() == 2);
  CHECK(doc.at("assignment").size() == 4);
}

TEST_CASE("solve usage errors exit with 2") {
  CHECK(run_cli("solve --scenario " + square_csv()).code == 2);  // no --k
  CHECK(run_cli("solve --k 2").code == 2);                       // no --scenario
  CliResult r = run_cli("solve --scenario " + square_csv() +
                        " --k 2 --algo warpdrive");
  CHECK(r.code == 2);
  CHECK(run_cli("").code == 2);         // a subcommand is required
  CHECK(run_cli("flibber").code == 2);  // unknown subcommand
}

TEST_CASE("solve reports infeasible requests with exit 3") {
  CliResult budget = run_cli("solve --scenario " + square_csv() +
                             " --algo brute --k 2 --budget 3");
  CHECK(budget.code == 3);
  CHECK(budget.text.find("infeasible:") != std::string::npos);

  CliResult vertex_only = run_cli("solve --scenario " + square_csv() +
                                  " --algo greedy --k 2 --constraint free");
  CHECK(vertex_only.code == 3);
  CHECK(vertex_only.text.find("infeasible:") != std::string::npos);
}

TEST_CASE("solve --algo brute matches the in-process enumeration") {
  const Scenario s = harness::generate_uniform(30, 99);
  const std::string path = scratch("brute30.csv");
  write_scenario_file(path, s);
  const Solution expected = oracle::brute_force_node(s, 3);
  const double expected_max = evaluate(s, expected).max;

  CliResult r = run_cli("solve --scenario " + path + " --algo brute --k 3");
  CHECK(r.code == 0);
  CHECK(r.text.find("max=" + format_double(expected_max) + "\n") !=
        std::string::npos);
}

TEST_CASE("solve reads json scenarios") {
  const std::string path = scratch("s8.json");
  CHECK(run_cli("generate --n 8 --seed 2 --out " + path).code == 0);
  CliResult r = run_cli("solve --scenario " + path + " --algo 2approx --k 2");
  CHECK(r.code == 0);
  CHECK(r.text.find("max=") != std::string::npos);
}

TEST_CASE("help is exit 0") {
  CliResult top = run_cli("--help");
  CHECK(top.code == 0);
  CHECK(top.text.find("generate") != std::string::npos);
  CliResult sub = run_cli("solve --help");
  CHECK(sub.code == 0);
  CHECK(sub.text.find("--scenario") != std::string::npos);
}

TEST_CASE("sweep emits one row per k with non-increasing max") {
  const std::string scenario = uniform_csv("s50.csv", 50, 11);
  const std::string out = scratch("sweep50.csv");
  CliResult r = run_cli("sweep --scenario " + scenario +
                        " --algo 2approx --seed 3 --k 1:5 --out " + out);
  CHECK(r.code == 0);
  CHECK(r.text.find("saturation_k=") != std::string::npos);
  CHECK(r.text.find("saturation_found=") != std::string::npos);

  const std::string csv = read_file(out);
  const auto rows = data_lines(csv);
  REQUIRE(rows.size() == 5);
  CHECK(csv.rfind("k,max,", 0) == 0);
  // the first row has no predecessor, so its improvement cell is empty
  CHECK(rows[0].back() == ',');
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    const double mx = std::stod(field(row, 1));
    CHECK(mx <= prev);
    prev = mx;
  }
}

TEST_CASE("sweep config file supplies defaults and flags override them") {
  const std::string scenario = uniform_csv("s40.csv", 40, 21);
  const std::string cfg_out = scratch("cfg_sweep.csv");
  const std::string ini = scratch("sweep.ini");
  write_file(ini, "# harness defaults\nalgo=2approx\nseed=9\nk=1,2,4\nout=" +
                      cfg_out + "\n");

  CliResult r = run_cli("sweep --scenario " + scenario + " --config " + ini);
  CHECK(r.code == 0);
  CHECK(data_lines(read_file(cfg_out)).size() == 3);

  // byte-stable across reruns
  const std::string first = read_file(cfg_out);
  CHECK(run_cli("sweep --scenario " + scenario + " --config " + ini).code == 0);
  CHECK(read_file(cfg_out) == first);

  // an explicit flag beats the config value for the same option
  fs::remove(cfg_out);
  const std::string flag_out = scratch("flag_sweep.csv");
  CliResult o = run_cli("sweep --scenario " + scenario + " --config " + ini +
                        " --out " + flag_out + " --k 2");
  CHECK(o.code == 0);
  CHECK(!fs::exists(cfg_out));
  CHECK(data_lines(read_file(flag_out)).size() == 1);
}

TEST_CASE("config flags spell booleans like the command line") {
  const std::string scenario = uniform_csv("s30.csv", 30, 31);
  const std::string ini = scratch("greedy.ini");
  const std::string via_cfg = scratch("greedy_cfg.csv");
  const std::string via_flag = scratch("greedy_flag.csv");
  write_file(ini, "algo=greedy\nbacktrack=false\nk=1:4\n");

  CHECK(run_cli("sweep --scenario " + scenario + " --config " + ini +
                " --out " + via_cfg)
            .code == 0);
  CHECK(run_cli("sweep --scenario " + scenario +
                " --algo greedy --no-backtrack --k 1:4 --out " + via_flag)
            .code == 0);
  CHECK(read_file(via_cfg) == read_file(via_flag));
}

TEST_CASE("config rejects unknown keys by name") {
  const std::string scenario = uniform_csv("s20a.csv", 20, 41);
  const std::string ini = scratch("bad.ini");
  write_file(ini, "algo=2approx\nwarpdrive=9\nphasers=3\n");
  CliResult r = run_cli("sweep --scenario " + scenario + " --config " + ini);
  CHECK(r.code == 2);
  CHECK(r.text.find("warpdrive") != std::string::npos);
  CHECK(r.text.find("phasers") != std::string::npos);

  write_file(ini, "algo=2approx\nconfig=other.ini\n");
  CliResult nested = run_cli("sweep --scenario " + scenario + " --config " + ini);
  CHECK(nested.code == 2);
  CHECK(nested.text.find("config") != std::string::npos);

  CliResult missing =
      run_cli("sweep --scenario " + scenario + " --config " + scratch("nope.ini"));
  CHECK(missing.code == 2);

  write_file(ini, "just a line without a separator\n");
  CliResult malformed = run_cli("sweep --scenario " + scenario + " --config " + ini);
  CHECK(malformed.code == 2);
  CHECK(malformed.text.find("line 1") != std::string::npos);
}

TEST_CASE("subcommands without config support refuse --config") {
  CliResult r = run_cli("solve --scenario " + square_csv() + " --k 2 --config " +
                        scratch("sweep.ini"));
  CHECK(r.code == 2);
}

TEST_CASE("compare grids algorithms over scenarios") {
  const std::string a = uniform_csv("cmp_a.csv", 30, 51);
  const std::string b = uniform_csv("cmp_b.csv", 30, 52);
  const std::string out = scratch("compare.csv");
  CliResult r = run_cli("compare --scenarios " + a + "," + b +
                        " --algos 2approx,dragoon --k 2,4 --seed 7 --out " + out);
  CHECK(r.code == 0);

  const std::string csv = read_file(out);
  CHECK(csv.rfind("algorithm,k,", 0) == 0);
  const auto rows = data_lines(csv);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].rfind("2approx:node,2,", 0) == 0);
  CHECK(rows[1].rfind("2approx:node,4,", 0) == 0);
  CHECK(rows[2].rfind("dragoon:node,2,", 0) == 0);
  CHECK(rows[3].rfind("dragoon:node,4,", 0) == 0);

  const std::string again = scratch("compare2.csv");
  CHECK(run_cli("compare --scenarios " + a + "," + b +
                " --algos 2approx,dragoon --k 2,4 --seed 7 --out " + again)
            .code == 0);
  CHECK(read_file(again) == csv);
}

TEST_CASE("deviation prints its aggregate statistics") {
  const std::string scenario = uniform_csv("dev20.csv", 20, 61);
  const std::string out = scratch("deviation.csv");
  CliResult r = run_cli("deviation --scenarios " + scenario + " --k 1,2 --out " + out);
  CHECK(r.code == 0);
  CHECK(r.text.find("mean_deviation_pct=") != std::string::npos);
  CHECK(r.text.find("worst_compensation=") != std::string::npos);
  const std::string csv = read_file(out);
  CHECK(csv.rfind("scenario,k,node_max,free_max,", 0) == 0);
  CHECK(data_lines(csv).size() == 2);
}

TEST_CASE("cost reports the argmin of its own curve") {
  const std::string scenario = uniform_csv("cost30.csv", 30, 71);
  const std::string out = scratch("cost.csv");
  CliResult r = run_cli("cost --scenario " + scenario +
                        " --k 1:6 --setup 5 --operating 1 --transport 1 "
                        "--basis sum --out " + out);
  CHECK(r.code == 0);

  const auto rows = data_lines(read_file(out));
  REQUIRE(rows.size() == 6);
  std::size_t best_k = 0;
  double best_total = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    const double total = std::stod(field(row, 3));
    if (total < best_total) {
      best_total = total;
      best_k = std::stoull(field(row, 0));
    }
  }
  CHECK(r.text.find("k_star=" + std::to_string(best_k) + "\n") !=
        std::string::npos);
}

TEST_CASE("KCENTER_SEED fills in when no seed is given") {
  const std::string env1 = scratch("env1.csv");
  const std::string env2 = scratch("env2.csv");
  const std::string env3 = scratch("env3.csv");
  const std::string bin = KCENTER_CLI_PATH;

  CHECK(run_cmd("KCENTER_SEED=7 " + bin + " generate --n 6 --out " + env1).code == 0);
  CHECK(run_cli("generate --n 6 --seed 7 --out " + env2).code == 0);
  CHECK(read_file(env1) == read_file(env2));

  // an explicit flag still wins over the environment
  CHECK(run_cmd("KCENTER_SEED=7 " + bin + " generate --n 6 --seed 8 --out " + env3)
            .code == 0);
  CHECK(read_file(env3) != read_file(env1));
  CHECK(run_cli("generate --n 6 --seed 8 --out " + env1).code == 0);
  CHECK(read_file(env3) == read_file(env1));
}

TEST_CASE("config seed outranks KCENTER_SEED") {
  const std::string scenario = uniform_csv("s20b.csv", 20, 81);
  const std::string ini = scratch("seed.ini");
  write_file(ini, "algo=monte\ntrials=16\nseed=9\nk=2\n");
  const std::string with_env = scratch("seed_env.csv");
  const std::string plain = scratch("seed_plain.csv");
  const std::string bin = KCENTER_CLI_PATH;

  CHECK(run_cmd("KCENTER_SEED=4 " + bin + " sweep --scenario " + scenario +
                " --config " + ini + " --out " + with_env)
            .code == 0);
  CHECK(run_cli("sweep --scenario " + scenario + " --config " + ini + " --out " +
                plain)
            .code == 0);
  CHECK(read_file(with_env) == read_file(plain));
}
