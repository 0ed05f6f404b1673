#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kcenter/core.hpp"

namespace kcenter {

// Shortest round-trip decimal form of v (std::to_chars), locale independent.
// All file output goes through this so that reruns are byte-identical.
std::string format_double(double v);

// CSV format: header "id,x,y", one vertex per row. The id column is written
// as the row index and ignored on input (order defines the index). Rejects
// empty vertex lists and non-finite coordinates.
Scenario read_scenario_csv(std::istream& in, std::string name);
void write_scenario_csv(std::ostream& out, const Scenario& scenario);

// JSON format: {"name": "...", "vertices": [[x, y], ...]}.
Scenario read_scenario_json(std::istream& in);
void write_scenario_json(std::ostream& out, const Scenario& scenario);

// Dispatch on the file extension (.csv or .json); CSV scenarios are named
// after the file stem. Throws std::invalid_argument for other extensions
// and std::runtime_error when the file cannot be opened.
Scenario read_scenario_file(const std::filesystem::path& path);
void write_scenario_file(const std::filesystem::path& path, const Scenario& scenario);

// Machine-readable record of a solved instance: scenario name, k,
// constraint, centers, assignment and the objective statistics. Keys are
// emitted in sorted order and doubles in shortest round-trip form, so equal
// solutions serialize to equal bytes.
std::string solution_to_json(const Scenario& scenario, const Solution& solution,
                             const ObjectiveReport& report);

}  // namespace kcenter
