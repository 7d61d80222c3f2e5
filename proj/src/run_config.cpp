#include "urnlab/run_config.hpp"

#include "urnlab/io.hpp"

#include <cmath>
#include <stdexcept>

namespace urnlab {

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["subcommand"] = c.subcommand;
    j["model_kind"] = c.model_kind;
    j["a"] = c.a;
    j["beta"] = c.beta;
    j["d"] = c.d;
    j["matrix_file"] = c.matrix_file;
    if (c.initial_counts)
        j["initial_counts"] = *c.initial_counts;
    else
        j["initial_counts"] = nullptr;
    j["steps"] = c.steps;
    j["trajectories"] = c.trajectories;
    j["seed"] = c.seed;
    j["thinning"] = c.thinning;
    j["tolerances"] = {{"point_tol", c.classify.point_tol},
                       {"winding_min", c.classify.winding_min},
                       {"radius_min", c.classify.radius_min},
                       {"tail_fraction", c.classify.tail_fraction}};
    j["no_classify"] = c.no_classify;
    j["out_dir"] = c.out_dir;
    j["format"] = c.format;
    j["with_search"] = c.with_search;
    j["search_resolution"] = c.search_resolution;
    j["csv_flatten"] = c.csv_flatten;
    j["a_min"] = c.a_min;
    j["a_max"] = c.a_max;
    j["a_step"] = c.a_step;
    j["beta_min"] = c.beta_min;
    j["beta_max"] = c.beta_max;
    j["beta_step"] = c.beta_step;
    j["empirical"] = c.empirical;
    j["empirical_traj"] = c.empirical_traj;
    j["empirical_steps"] = c.empirical_steps;
    j["quick"] = c.quick;
    j["threads"] = c.threads;
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.model_kind = j.at("model_kind").get<std::string>();
    c.a = j.at("a").get<double>();
    c.beta = j.at("beta").get<double>();
    c.d = j.at("d").get<int>();
    c.matrix_file = j.at("matrix_file").get<std::string>();
    if (!j.at("initial_counts").is_null())
        c.initial_counts = j.at("initial_counts").get<std::vector<std::int64_t>>();
    c.steps = j.at("steps").get<std::int64_t>();
    c.trajectories = j.at("trajectories").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.thinning = j.at("thinning").get<std::int64_t>();
    const auto& tol = j.at("tolerances");
    c.classify.point_tol = tol.at("point_tol").get<double>();
    c.classify.winding_min = tol.at("winding_min").get<double>();
    c.classify.radius_min = tol.at("radius_min").get<double>();
    c.classify.tail_fraction = tol.at("tail_fraction").get<double>();
    c.no_classify = j.at("no_classify").get<bool>();
    c.out_dir = j.at("out_dir").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.with_search = j.at("with_search").get<bool>();
    c.search_resolution = j.at("search_resolution").get<int>();
    c.csv_flatten = j.at("csv_flatten").get<bool>();
    c.a_min = j.at("a_min").get<double>();
    c.a_max = j.at("a_max").get<double>();
    c.a_step = j.at("a_step").get<double>();
    c.beta_min = j.at("beta_min").get<double>();
    c.beta_max = j.at("beta_max").get<double>();
    c.beta_step = j.at("beta_step").get<double>();
    c.empirical = j.at("empirical").get<bool>();
    c.empirical_traj = j.at("empirical_traj").get<int>();
    c.empirical_steps = j.at("empirical_steps").get<std::int64_t>();
    c.quick = j.at("quick").get<bool>();
    c.threads = j.at("threads").get<int>();
    return c;
}

void validate(const RunConfig& c) {
    const bool needs_model =
        c.subcommand == "simulate" || c.subcommand == "analyze";
    if (needs_model) {
        if (c.model_kind != "symmetric" && c.model_kind != "cyclic" &&
            c.model_kind != "general" && c.model_kind != "two-type")
            throw std::invalid_argument("unknown model kind: " + c.model_kind);
        if (c.model_kind == "general") {
            if (c.matrix_file.empty())
                throw std::invalid_argument("model kind 'general' requires --matrix-file");
        } else if (!c.matrix_file.empty()) {
            throw std::invalid_argument("--matrix-file is only valid with --model general");
        }
        if (c.model_kind != "general") {
            if (!(c.a > 0.0)) throw std::invalid_argument("need interaction strength a > 0");
        }
        if (!(c.beta > 0.0)) throw std::invalid_argument("need exponent beta > 0");
        if (c.model_kind == "symmetric" && c.d < 2)
            throw std::invalid_argument("need at least 2 colours");
    }
    if (c.subcommand == "simulate") {
        if (c.steps < 1) throw std::invalid_argument("need steps >= 1");
        if (c.trajectories < 1) throw std::invalid_argument("need at least one trajectory");
        if (c.thinning < 1) throw std::invalid_argument("need thinning >= 1");
        if (c.format != "csv" && c.format != "json")
            throw std::invalid_argument("format must be csv or json");
        if (!c.no_classify) {
            const auto samples = c.steps / c.thinning + 1;
            const auto tail = static_cast<std::int64_t>(
                std::ceil(c.classify.tail_fraction * static_cast<double>(samples)));
            if (tail < 100)
                throw std::invalid_argument(
                    "classification needs >= 100 tail samples: raise --steps, lower --thinning, "
                    "or pass --no-classify");
        }
        if (c.initial_counts) {
            const int d = c.model_kind == "two-type" ? 2
                          : c.model_kind == "cyclic" ? 3
                                                     : c.d;
            if (c.model_kind != "general" &&
                static_cast<int>(c.initial_counts->size()) != d)
                throw std::invalid_argument("--init needs one count per colour");
            for (const auto v : *c.initial_counts)
                if (v < 1) throw std::invalid_argument("--init counts must be >= 1");
        }
    }
    if (c.subcommand == "phase") {
        if (!(c.a_step > 0.0) || !(c.beta_step > 0.0) || c.a_max < c.a_min ||
            c.beta_max < c.beta_min)
            throw std::invalid_argument("bad phase grid range");
        if (c.model_kind != "symmetric" && c.model_kind != "cyclic")
            throw std::invalid_argument("phase sweeps cover the symmetric and cyclic families");
    }
}

ModelSpec build_model(const RunConfig& c) {
    if (c.model_kind == "symmetric") return symmetric_model(c.d, c.a, c.beta);
    if (c.model_kind == "two-type") return two_type_model(c.a, c.beta);
    if (c.model_kind == "cyclic") return cyclic_model(c.a, c.beta);
    if (c.model_kind == "general") return general_model(load_matrix_file(c.matrix_file), c.beta);
    throw std::invalid_argument("unknown model kind: " + c.model_kind);
}

}  // namespace urnlab
