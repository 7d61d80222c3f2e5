#pragma once

#include "urnlab/model.hpp"
#include "urnlab/monte_carlo.hpp"
#include "urnlab/phase_diagram.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace urnlab {

/// Shortest-roundtrip style formatting with 17 significant digits.
std::string format_double(double value);

/// Write content to path via a temp file + rename, so a failed run never
/// leaves a partial file behind.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// d x d whitespace-separated nonnegative matrix. Ragged rows, negative
/// entries and non-numbers are rejected with row/column diagnostics.
Eigen::MatrixXd load_matrix_file(const std::filesystem::path& path);

std::string trajectory_csv(const TrajectoryRecord& record);

nlohmann::json to_json(const ModelSpec& model);
nlohmann::json to_json(const StationaryPoint& point);
nlohmann::json to_json(const LimitClassification& verdict);
nlohmann::json to_json(const TrajectoryRecord& record);
nlohmann::json to_json(const EnsembleSummary& summary);
nlohmann::json to_json(const SymmetricPhase& phase);

std::string phase_grid_csv(const PhaseGrid& grid);
std::string boundary_curves_csv(const BoundaryCurves& curves);
std::string crossings_csv(const std::vector<BoundaryCrossing>& crossings,
                          const std::string& curve_id);
nlohmann::json to_json(const PhaseGrid& grid);

}  // namespace urnlab
