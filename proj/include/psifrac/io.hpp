#pragma once

#include "psifrac/grid_function.hpp"
#include "psifrac/solver.hpp"

#include <json.hpp>

#include <span>
#include <string>

namespace psifrac {

/// Solution CSV: columns t, psi_increment, weighted_value, unweighted_value.
/// No run metadata lands in data files; identical inputs give identical bytes.
void write_solution_csv(const std::string& path, const GridFunction& y);

/// Generic profile CSV: columns t, psi_increment, <value_name>.
void write_profile_csv(const std::string& path, const Frame& frame,
                       std::span<const double> values, const std::string& value_name);

nlohmann::json report_to_json(const SolverReport& report);

void write_json_file(const std::string& path, const nlohmann::json& j);

std::string format_double(double v);

} // namespace psifrac
