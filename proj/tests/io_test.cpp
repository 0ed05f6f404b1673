#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "kcenter/core.hpp"
#include "kcenter/rng.hpp"
#include "kcenter/scenario_io.hpp"
#include "test_util.hpp"

using namespace kcenter;
using kctest::random_scenario;
using kctest::square10;

namespace {

// Unique per-process scratch dir; tests that touch the filesystem stay here.
std::filesystem::path scratch_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("kcenter_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(10.0) == "10");
  CHECK(format_double(0.1) == "0.1");
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const double v = rng.uniform(-1e6, 1e6);
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("scenario CSV round trip") {
  Rng rng(5);
  const Scenario s = random_scenario(rng, 37);
  std::stringstream buf;
  write_scenario_csv(buf, s);
  const Scenario back = read_scenario_csv(buf, s.name);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.vertices[i] == s.vertices[i]);
  }
}

TEST_CASE("scenario CSV rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_scenario_csv(in, "t");
  };
  CHECK_THROWS_AS(parse(""), std::invalid_argument);
  CHECK_THROWS_AS(parse("x,y\n0,0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("id,x,y\n"), std::invalid_argument);          // header only
  CHECK_THROWS_AS(parse("id,x,y\n0,nan,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("id,x,y\n0,1,inf\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("id,x,y\n0,1\n"), std::invalid_argument);     // short row
  CHECK_THROWS_AS(parse("id,x,y\n0,a,b\n"), std::invalid_argument);

  // Blank lines are tolerated.
  const Scenario ok = parse("id,x,y\n0,1,2\n\n1,3,4\n");
  CHECK(ok.size() == 2);
  CHECK(ok.vertices[1] == Point{3, 4});
}

TEST_CASE("scenario JSON round trip") {
  Rng rng(9);
  Scenario s = random_scenario(rng, 21);
  s.name = "jsonic";
  std::stringstream buf;
  write_scenario_json(buf, s);
  const Scenario back = read_scenario_json(buf);
  CHECK(back.name == "jsonic");
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.vertices[i] == s.vertices[i]);
  }
}

TEST_CASE("scenario JSON rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_scenario_json(in);
  };
  CHECK_THROWS_AS(parse("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse("{}"), std::invalid_argument);
  CHECK_THROWS_AS(parse(R"({"name":"x","vertices":[]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse(R"({"name":"x","vertices":[[1]]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse(R"({"name":"x","vertices":[[1,"a"]]})"), std::invalid_argument);
}

TEST_CASE("file dispatch follows the extension") {
  const auto dir = scratch_dir();
  Scenario s = square10();
  s.name = "whatever";

  const auto csv_path = dir / "corners.csv";
  write_scenario_file(csv_path, s);
  const Scenario from_csv = read_scenario_file(csv_path);
  CHECK(from_csv.name == "corners");  // CSV carries no name; stem is used
  CHECK(from_csv.size() == 4);

  const auto json_path = dir / "corners.json";
  write_scenario_file(json_path, s);
  const Scenario from_json = read_scenario_file(json_path);
  CHECK(from_json.name == "whatever");
  CHECK(from_json.vertices[3] == Point{10, 10});

  const auto txt_path = dir / "corners.txt";
  std::ofstream(txt_path) << "id,x,y\n0,1,2\n";
  CHECK_THROWS_AS(read_scenario_file(txt_path), std::invalid_argument);
  CHECK_THROWS_AS(write_scenario_file(dir / "corners.dat", s), std::invalid_argument);
  CHECK_THROWS_AS(read_scenario_file(dir / "missing.csv"), std::runtime_error);
}

TEST_CASE("solution JSON is parseable and byte stable") {
  const Scenario s = square10();
  const Solution sol =
      make_solution(s, {{0, 0}, {10, 10}}, PlacementConstraint::node());
  const ObjectiveReport rep = evaluate(s, sol);

  const std::string a = solution_to_json(s, sol, rep);
  const std::string b = solution_to_json(s, sol, rep);
  CHECK(a == b);

  const nlohmann::json j = nlohmann::json::parse(a);
  CHECK(j.at("k") == 2);
  CHECK(j.at("constraint") == "node");
  CHECK(j.at("scenario") == "square10");
  CHECK(j.at("centers").size() == 2);
  CHECK(j.at("assignment").size() == 4);
  CHECK(j.at("objective").at("max").get<double>() == doctest::Approx(10.0));
}
