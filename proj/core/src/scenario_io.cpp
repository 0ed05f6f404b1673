#include "kcenter/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

#include "json.hpp"

namespace kcenter {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_coordinate(std::string_view field, std::size_t row, const char* axis) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("scenario csv row " + std::to_string(row) +
                                ": cannot parse " + axis + " value '" +
                                std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("scenario csv row " + std::to_string(row) +
                                ": non-finite " + std::string(axis) + " value");
  }
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    throw std::runtime_error("format_double: value does not fit buffer");
  }
  return std::string(buf, ptr);
}

Scenario read_scenario_csv(std::istream& in, std::string name) {
  Scenario scenario;
  scenario.name = std::move(name);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("scenario csv: empty input");
  }
  if (trim(line) != "id,x,y") {
    throw std::invalid_argument("scenario csv: expected header 'id,x,y', got '" +
                                std::string(trim(line)) + "'");
  }
  std::size_t row = 1;
  while (std::getline(in, line)) {
    const std::string_view sv = trim(line);
    if (sv.empty()) {
      ++row;
      continue;
    }
    const std::size_t c1 = sv.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos
                                                        : sv.find(',', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
      throw std::invalid_argument("scenario csv row " + std::to_string(row) +
                                  ": expected 'id,x,y'");
    }
    const double x = parse_coordinate(sv.substr(c1 + 1, c2 - c1 - 1), row, "x");
    const double y = parse_coordinate(sv.substr(c2 + 1), row, "y");
    scenario.vertices.push_back({x, y});
    ++row;
  }
  validate(scenario);
  return scenario;
}

void write_scenario_csv(std::ostream& out, const Scenario& scenario) {
  validate(scenario);
  out << "id,x,y\n";
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    out << i << ',' << format_double(scenario.vertices[i].x) << ','
        << format_double(scenario.vertices[i].y) << '\n';
  }
}

Scenario read_scenario_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scenario json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw std::invalid_argument("scenario json: expected {\"name\", \"vertices\"}");
  }
  Scenario scenario;
  scenario.name = doc.value("name", std::string("scenario"));
  for (const auto& entry : doc["vertices"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number()) {
      throw std::invalid_argument("scenario json: vertices must be [x, y] pairs");
    }
    scenario.vertices.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  validate(scenario);
  return scenario;
}

void write_scenario_json(std::ostream& out, const Scenario& scenario) {
  validate(scenario);
  nlohmann::json doc;
  doc["name"] = scenario.name;
  auto& vertices = doc["vertices"] = nlohmann::json::array();
  for (const Point p : scenario.vertices) {
    vertices.push_back({p.x, p.y});
  }
  out << doc.dump(2) << '\n';
}

Scenario read_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path.string());
  }
  const auto ext = path.extension().string();
  if (ext == ".csv") {
    return read_scenario_csv(in, path.stem().string());
  }
  if (ext == ".json") {
    return read_scenario_json(in);
  }
  throw std::invalid_argument("scenario file must end in .csv or .json: " +
                              path.string());
}

void write_scenario_file(const std::filesystem::path& path, const Scenario& scenario) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write scenario file: " + path.string());
  }
  const auto ext = path.extension().string();
  if (ext == ".csv") {
    write_scenario_csv(out, scenario);
  } else if (ext == ".json") {
    write_scenario_json(out, scenario);
  } else {
    throw std::invalid_argument("scenario file must end in .csv or .json: " +
                                path.string());
  }
}

std::string solution_to_json(const Scenario& scenario, const Solution& solution,
                             const ObjectiveReport& report) {
  nlohmann::json doc;
  doc["scenario"] = scenario.name;
  doc["k"] = solution.k();
  doc["constraint"] = solution.constraint.kind == Placement::kNode ? "node" : "free";
  auto& centers = doc["centers"] = nlohmann::json::array();
  for (const Point c : solution.centers) {
    centers.push_back({c.x, c.y});
  }
  doc["assignment"] = solution.assignment;
  doc["objective"] = {{"max", report.max},
                      {"q95", report.q95},
                      {"median", report.median},
                      {"mean", report.mean},
                      {"sum", report.sum}};
  return doc.dump(2) + "\n";
}

}  // namespace kcenter
