#pragma once

#include "stefan/config.hpp"
#include "stefan/driver.hpp"
#include "stefan/problems.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace stefan {

nlohmann::json config_to_json(const SolverConfig& c);
/// Overlay the keys present in j onto c. Unknown keys are rejected.
void apply_config_json(const nlohmann::json& j, SolverConfig& c);

/// report.json body. With timing off every wall-clock field is written as 0.
nlohmann::json report_to_json(const ProblemSpec& p, const SolverReport& r, bool timing);

void write_history_csv(const std::filesystem::path& path, const SolverReport& r, bool timing);
/// x,[y,]t,u_pred,u_exact,abs_err over the metrics field grid.
void write_field_grid_csv(const std::filesystem::path& path, const ProblemSpec& p, const SolverReport& r);
/// [y,]t,gamma_pred,gamma_exact,abs_err over the metrics interface grid.
void write_interface_grid_csv(const std::filesystem::path& path, const ProblemSpec& p, const SolverReport& r);

void write_text(const std::filesystem::path& path, const std::string& body);
std::string format_double(double v);

} // namespace stefan
