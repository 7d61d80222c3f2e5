#pragma once

#include "urnlab/model.hpp"
#include "urnlab/monte_carlo.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urnlab {

/// Parsed command-line configuration. Serializes to the provenance sidecar
/// and round-trips losslessly through JSON.
struct RunConfig {
    std::string subcommand;
    std::string model_kind = "symmetric";  // symmetric | cyclic | general | two-type
    double a = 0.0;
    double beta = 0.0;
    int d = 3;
    std::string matrix_file;
    std::optional<std::vector<std::int64_t>> initial_counts;

    std::int64_t steps = 100000;
    int trajectories = 20;
    std::uint64_t seed = 7;
    std::int64_t thinning = 100;
    ClassifyOptions classify;
    bool no_classify = false;

    std::string out_dir;
    std::string format = "csv";  // csv | json

    // analyze
    bool with_search = false;
    int search_resolution = 300;
    bool csv_flatten = false;

    // phase
    double a_min = 0.05, a_max = 0.95, a_step = 0.05;
    double beta_min = 1.0, beta_max = 6.0, beta_step = 0.25;
    bool empirical = false;
    int empirical_traj = 20;
    std::int64_t empirical_steps = 100000;

    // verify
    bool quick = false;

    int threads = 0;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Cross-field validation: model/flag combinations, positivity, and (unless
/// classification is disabled) enough samples for the tail window. Throws
/// std::invalid_argument with a usage-level message.
void validate(const RunConfig& config);

/// Model described by the config (loads the matrix file for kind "general").
ModelSpec build_model(const RunConfig& config);

}  // namespace urnlab
