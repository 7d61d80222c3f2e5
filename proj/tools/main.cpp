#include "urnlab/acceptance.hpp"
#include "urnlab/io.hpp"
#include "urnlab/model.hpp"
#include "urnlab/monte_carlo.hpp"
#include "urnlab/parallel.hpp"
#include "urnlab/phase_diagram.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/run_config.hpp"
#include "urnlab/stationary.hpp"
#include "urnlab/vector_field.hpp"
#include "urnlab/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptanceFailure = 1;
constexpr int kExitUsage = 2;

json provenance(const urnlab::RunConfig& config) {
    json j;
    j["tool"] = "urnlab";
    j["version"] = urnlab::kVersion;
    j["config"] = urnlab::to_json(config);
    return j;
}

fs::path require_out_dir(const urnlab::RunConfig& config) {
    const fs::path dir = config.out_dir.empty() ? fs::path(".") : fs::path(config.out_dir);
    if (!fs::is_directory(dir))
        throw std::runtime_error("output directory does not exist: " + dir.string());
    return dir;
}

urnlab::EnsembleOptions ensemble_options(const urnlab::RunConfig& config) {
    urnlab::EnsembleOptions opts;
    opts.thinning = config.thinning;
    opts.classify = config.classify;
    opts.threads = config.threads;
    opts.search_resolution = config.search_resolution;
    if (config.initial_counts) {
        urnlab::CountVector init(config.initial_counts->size());
        for (std::size_t i = 0; i < config.initial_counts->size(); ++i)
            init[static_cast<Eigen::Index>(i)] = (*config.initial_counts)[i];
        opts.initial = init;
    }
    return opts;
}

std::string trajectory_filename(int index, const std::string& format) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "traj_%04d.%s", index, format.c_str());
    return buf;
}

int cmd_simulate(const urnlab::RunConfig& config) {
    const urnlab::ModelSpec model = urnlab::build_model(config);
    const fs::path dir = require_out_dir(config);
    const auto opts = ensemble_options(config);

    json summary;
    std::vector<urnlab::TrajectoryRecord> records;
    std::vector<std::uint64_t> seeds;

    if (config.no_classify) {
        records.resize(static_cast<std::size_t>(config.trajectories));
        seeds.resize(records.size());
        const urnlab::UrnState start = opts.initial ? urnlab::initial_state(*opts.initial)
                                                    : urnlab::initial_state(model.d);
        urnlab::SimulateOptions sim_opts;
        sim_opts.thinning = config.thinning;
        urnlab::parallel_for_index(config.trajectories, config.threads, [&](int i) {
            const auto slot = static_cast<std::size_t>(i);
            seeds[slot] = urnlab::stream_seed(config.seed, static_cast<std::uint64_t>(i));
            records[slot] = urnlab::simulate(model, start, config.steps, seeds[slot], sim_opts);
        });
        summary["model"] = urnlab::to_json(model);
        summary["trajectories"] = config.trajectories;
        summary["steps"] = config.steps;
        summary["seeds"] = seeds;
        summary["classified"] = false;
    } else {
        urnlab::EnsembleOptions keep = opts;
        keep.keep_trajectories = true;
        auto ensemble =
            urnlab::run_ensemble(model, config.trajectories, config.steps, config.seed, keep);
        summary = urnlab::to_json(ensemble);
        summary["classified"] = true;
        seeds = ensemble.seeds;
        records = std::move(ensemble.trajectories);
    }

    for (int i = 0; i < config.trajectories; ++i) {
        const auto& record = records[static_cast<std::size_t>(i)];
        const fs::path path = dir / trajectory_filename(i, config.format);
        if (config.format == "csv")
            urnlab::atomic_write_file(path, urnlab::trajectory_csv(record));
        else
            urnlab::atomic_write_file(path, urnlab::to_json(record).dump(2) + "\n");
    }

    json sidecar = provenance(config);
    sidecar["seeds"] = seeds;
    urnlab::atomic_write_file(dir / "provenance.json", sidecar.dump(2) + "\n");

    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

json analyze_symmetric(const urnlab::RunConfig& config) {
    json j;
    j["model"] = urnlab::to_json(urnlab::build_model(config));
    const auto roots =
        urnlab::find_positive_roots({config.a, config.beta, urnlab::PolyVariant::ThreeTypeSymmetric});
    json roots_json = json::array();
    for (const auto& r : roots)
        roots_json.push_back({{"z", r.z}, {"multiplicity", r.multiplicity}});
    j["roots"] = std::move(roots_json);

    json points = json::array();
    for (const auto& p : urnlab::enumerate_stationary_points(config.a, config.beta))
        points.push_back(urnlab::to_json(p));
    j["stationary_points"] = std::move(points);

    const auto phase = urnlab::phase_symmetric(config.a, config.beta);
    j["phase"] = urnlab::to_json(phase);
    if (config.a < 1.0) {
        j["beta0"] = urnlab::beta0(config.a);
        j["beta1"] = *phase.beta1;
        j["upper_threshold"] = *phase.upper;
    } else {
        j["beta0"] = nullptr;
        j["beta1"] = nullptr;
        j["upper_threshold"] = nullptr;
    }
    return j;
}

json analyze_two_type(const urnlab::RunConfig& config) {
    json j;
    j["model"] = urnlab::to_json(urnlab::build_model(config));
    j["criterion"] = (1.0 - config.a) / (1.0 + config.a) * config.beta;
    const auto root = urnlab::two_type_root(config.a, config.beta);
    j["root"] = root ? json(*root) : json(nullptr);
    json points = json::array();
    for (const auto& p : urnlab::two_type_stationary_points(config.a, config.beta))
        points.push_back(urnlab::to_json(p));
    j["stationary_points"] = std::move(points);
    return j;
}

json analyze_cyclic(const urnlab::RunConfig& config) {
    json j;
    j["model"] = urnlab::to_json(urnlab::build_model(config));
    j["center_stability"] = urnlab::to_string(
        urnlab::cyclic_center_stability(config.a, config.beta));
    j["center_threshold_beta"] =
        config.a < 2.0 ? json(2.0 * (1.0 + config.a) / (2.0 - config.a)) : json(nullptr);

    const auto field = [&](const Eigen::Vector3d& x) {
        return urnlab::drift_cyclic(config.a, config.beta, x);
    };
    const auto eigs = urnlab::eigenvalues_2x2(
        urnlab::jacobian_reduced(field, Eigen::Vector3d::Constant(1.0 / 3.0)));
    j["center_eigenvalues"] = {{{"re", eigs[0].real()}, {"im", eigs[0].imag()}},
                               {{"re", eigs[1].real()}, {"im", eigs[1].imag()}}};

    if (config.with_search) {
        urnlab::SearchOptions opts;
        opts.grid_resolution = config.search_resolution;
        const auto result = urnlab::cyclic_stationary_search(config.a, config.beta, opts);
        json points = json::array();
        for (const auto& p : result.points) points.push_back(urnlab::to_json(p));
        j["search"] = {{"grid_resolution", opts.grid_resolution},
                       {"points", std::move(points)},
                       {"unrefined", json::array()}};
        for (const auto& u : result.unrefined)
            j["search"]["unrefined"].push_back(
                std::vector<double>(u.coords.data(), u.coords.data() + u.coords.size()));
    }
    return j;
}

json analyze_general(const urnlab::RunConfig& config) {
    const urnlab::ModelSpec model = urnlab::build_model(config);
    json j;
    j["model"] = urnlab::to_json(model);
    if (model.d != 3)
        throw std::invalid_argument(
            "general-matrix analysis uses the 2-simplex grid search; only d=3 is supported "
            "(simulation works for any d)");
    urnlab::SearchOptions opts;
    opts.grid_resolution = config.search_resolution;
    const auto result = urnlab::stationary_search(model, opts);
    json points = json::array();
    for (const auto& p : result.points) points.push_back(urnlab::to_json(p));
    j["search"] = {{"grid_resolution", opts.grid_resolution}, {"points", std::move(points)}};
    return j;
}

std::string stationary_points_csv(const json& analysis) {
    std::ostringstream out;
    out << "x1,x2,x3,r,axis,stability,multiplicity\n";
    if (!analysis.contains("stationary_points")) return out.str();
    for (const auto& p : analysis["stationary_points"]) {
        const auto& loc = p["location"];
        for (std::size_t i = 0; i < 3; ++i) {
            if (i < loc.size())
                out << urnlab::format_double(loc[i].get<double>());
            out << ',';
        }
        out << (p["r"].is_null() ? "" : urnlab::format_double(p["r"].get<double>())) << ','
            << (p["axis"].is_null() ? "" : std::to_string(p["axis"].get<int>())) << ','
            << p["stability"].get<std::string>() << ',' << p["multiplicity"].get<int>() << "\n";
    }
    return out.str();
}

int cmd_analyze(const urnlab::RunConfig& config) {
    json analysis;
    if (config.model_kind == "symmetric") {
        if (config.d != 3)
            throw std::invalid_argument(
                "closed-form symmetric analysis covers d=3; use `simulate` for other d");
        analysis = analyze_symmetric(config);
    } else if (config.model_kind == "two-type") {
        analysis = analyze_two_type(config);
    } else if (config.model_kind == "cyclic") {
        analysis = analyze_cyclic(config);
    } else {
        analysis = analyze_general(config);
    }
    analysis["provenance"] = provenance(config);
    if (config.csv_flatten)
        std::cout << stationary_points_csv(analysis);
    else
        std::cout << analysis.dump(2) << "\n";
    return kExitOk;
}

int cmd_phase(const urnlab::RunConfig& config) {
    const fs::path dir = require_out_dir(config);
    const auto a_grid = urnlab::linear_grid(config.a_min, config.a_max, config.a_step);
    const auto beta_grid = urnlab::linear_grid(config.beta_min, config.beta_max, config.beta_step);

    urnlab::PhaseGrid grid;
    std::string curves_csv;
    if (config.model_kind == "symmetric") {
        grid = urnlab::sweep_symmetric(a_grid, beta_grid);
        std::vector<double> interior;
        for (const double a : a_grid)
            if (a < 1.0) interior.push_back(a);
        curves_csv = urnlab::boundary_curves_csv(urnlab::boundary_curves(interior));
    } else {
        urnlab::CyclicSweepOptions opts;
        opts.with_search = config.with_search;
        opts.search_resolution = config.search_resolution;
        grid = urnlab::sweep_cyclic(a_grid, beta_grid, opts);

        std::ostringstream curves;
        curves << "a,beta,curve_id\n";
        for (const double a : a_grid)
            if (a < 2.0)
                curves << urnlab::format_double(a) << ','
                       << urnlab::format_double(2.0 * (1.0 + a) / (2.0 - a)) << ",center\n";
        if (config.with_search) {
            const auto labeller = [&](double a, double beta) -> std::string {
                urnlab::SearchOptions sopts;
                sopts.grid_resolution = config.search_resolution;
                const auto result = urnlab::cyclic_stationary_search(a, beta, sopts);
                for (const auto& p : result.points) {
                    const bool center = (p.location.coords -
                                         Eigen::VectorXd::Constant(3, 1.0 / 3.0)).norm() < 1e-6;
                    if (!center && p.stability == urnlab::Stability::LinearlyStable)
                        return "extra";
                    }
                return "none";
            };
            for (const auto& crossing : urnlab::refine_crossings(grid, labeller))
                curves << urnlab::format_double(crossing.a) << ','
                       << urnlab::format_double(crossing.beta) << ",extra\n";
        }
        curves_csv = curves.str();
    }

    if (config.empirical) {
        grid.empirical.assign(grid.labels.size(), -1);
        urnlab::EnsembleOptions opts;
        opts.threads = config.threads;
        for (std::size_t i = 0; i < grid.a_grid.size(); ++i) {
            for (std::size_t j = 0; j < grid.beta_grid.size(); ++j) {
                const std::size_t cell = grid.index(i, j);
                const double a = grid.a_grid[i];
                const double beta = grid.beta_grid[j];
                const std::string& label = grid.labels[cell];
                const urnlab::ModelSpec model = config.model_kind == "symmetric"
                                                    ? urnlab::symmetric_model(3, a, beta)
                                                    : urnlab::cyclic_model(a, beta);
                const std::uint64_t cell_seed =
                    config.seed ^ (0x100000001b3ULL * (cell + 1));
                const auto summary = urnlab::run_ensemble(
                    model, config.empirical_traj, config.empirical_steps, cell_seed, opts);
                int center = 0, other = 0;
                for (std::size_t k = 0; k < summary.points.size(); ++k) {
                    const bool is_center = summary.points[k].r.has_value() &&
                                           *summary.points[k].r == 1.0 &&
                                           !summary.points[k].axis.has_value();
                    (is_center ? center : other) += summary.hits[k];
                }
                int agree = -1;
                if (label == "SymmetricOnly" || label == "SupercriticalA")
                    agree = (other == 0 && center >= 1) ? 1 : 0;
                else if (label == "AsymmetricOnly")
                    agree = (center == 0 && other >= 1) ? 1 : 0;
                else if (label == "Coexistence")
                    agree = (center >= 1 && other >= 1) ? 1 : 0;
                else if (label == "CenterStable")
                    agree = center >= 1 ? 1 : 0;
                else if (label == "CenterUnstable")
                    agree = center == 0 ? 1 : 0;
                else if (label == "Marginal")
                    agree = 1;
                grid.empirical[cell] = agree;
            }
        }
    }

    urnlab::atomic_write_file(dir / "phase_grid.csv", urnlab::phase_grid_csv(grid));
    urnlab::atomic_write_file(dir / "boundary_curves.csv", curves_csv);

    json mirror = urnlab::to_json(grid);
    mirror["boundary_tolerance"] = urnlab::kSweepBoundaryTol;
    mirror["family"] = config.model_kind;
    if (config.empirical) {
        mirror["empirical_traj"] = config.empirical_traj;
        mirror["empirical_steps"] = config.empirical_steps;
        mirror["seed"] = config.seed;
    }
    urnlab::atomic_write_file(dir / "phase.json", mirror.dump(2) + "\n");

    json sidecar = provenance(config);
    urnlab::atomic_write_file(dir / "provenance.json", sidecar.dump(2) + "\n");
    std::cout << "wrote " << (dir / "phase_grid.csv").string() << ", "
              << (dir / "boundary_curves.csv").string() << ", " << (dir / "phase.json").string()
              << "\n";
    return kExitOk;
}

int cmd_verify(const urnlab::RunConfig& config) {
    urnlab::AcceptanceOptions opts;
    opts.quick = config.quick;
    opts.seed = config.seed;
    opts.threads = config.threads;
    const auto results = urnlab::run_acceptance(opts);

    std::ostringstream report;
    report << "urnlab " << urnlab::kVersion << " verify seed=" << config.seed
           << (config.quick ? " quick" : " full") << "\n";
    report << urnlab::acceptance_report(results);
    std::cout << report.str();

    if (!config.out_dir.empty()) {
        const fs::path dir = require_out_dir(config);
        urnlab::atomic_write_file(dir / "verify_report.txt", report.str());
        urnlab::atomic_write_file(dir / "provenance.json", provenance(config).dump(2) + "\n");
    }
    return urnlab::all_passed(results) ? kExitOk : kExitAcceptanceFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlinear urns with interacting types: simulation, stationary-point "
                 "analysis, phase diagrams, and verification"};
    app.require_subcommand(1);
    urnlab::RunConfig config;

    auto add_model_flags = [&config](CLI::App* cmd, bool with_d) {
        cmd->add_option("--model", config.model_kind,
                        "Model family: symmetric | cyclic | general | two-type")
            ->default_str("symmetric");
        cmd->add_option("-a,--interaction", config.a, "Off-diagonal interaction strength a");
        cmd->add_option("--beta", config.beta, "Reinforcement exponent beta");
        if (with_d) cmd->add_option("-d,--colours", config.d, "Colour count (symmetric family)");
        cmd->add_option("--matrix-file", config.matrix_file,
                        "Whitespace-separated d x d matrix (general model)");
        cmd->add_option("--threads", config.threads,
                        "Worker threads (0 = URNLAB_THREADS or hardware)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "Run trajectory ensembles");
    add_model_flags(simulate, true);
    simulate->add_option("--steps", config.steps, "Steps per trajectory");
    simulate->add_option("--traj", config.trajectories, "Number of trajectories");
    simulate->add_option("--seed", config.seed, "Base seed (trajectory i uses seed XOR i)");
    simulate->add_option("--thinning", config.thinning, "Record every k-th step");
    simulate->add_option("--init", config.initial_counts,
                         "Initial ball counts (default: one per colour)");
    simulate->add_option("--out", config.out_dir, "Output directory (must exist)");
    simulate->add_option("--format", config.format, "Trajectory file format: csv | json");
    simulate->add_flag("--no-classify", config.no_classify, "Skip limit classification");
    simulate->add_option("--point-tol", config.classify.point_tol,
                         "Point-limit distance tolerance");
    simulate->add_option("--winding-min", config.classify.winding_min,
                         "Cycling verdict: minimum turns");
    simulate->add_option("--radius-min", config.classify.radius_min,
                         "Cycling verdict: minimum orbit radius");
    simulate->add_option("--tail-fraction", config.classify.tail_fraction,
                         "Tail window fraction");

    CLI::App* analyze =
        app.add_subcommand("analyze", "Roots, stationary points, stability, and phase");
    add_model_flags(analyze, true);
    analyze->add_flag("--search", config.with_search, "Grid-search stationary points (cyclic)");
    analyze->add_option("--resolution", config.search_resolution, "Search grid resolution");
    analyze->add_flag("--csv", config.csv_flatten, "Flatten stationary points to CSV");

    CLI::App* phase = app.add_subcommand("phase", "Sweep (a, beta) grids and emit phase data");
    add_model_flags(phase, false);
    phase->add_option("--a-min", config.a_min, "Grid start in a");
    phase->add_option("--a-max", config.a_max, "Grid end in a");
    phase->add_option("--a-step", config.a_step, "Grid step in a");
    phase->add_option("--beta-min", config.beta_min, "Grid start in beta");
    phase->add_option("--beta-max", config.beta_max, "Grid end in beta");
    phase->add_option("--beta-step", config.beta_step, "Grid step in beta");
    phase->add_flag("--with-search", config.with_search,
                    "Mark cyclic cells with stable non-centre points");
    phase->add_option("--resolution", config.search_resolution, "Search grid resolution");
    phase->add_flag("--empirical", config.empirical, "Overlay ensemble verdicts per cell");
    phase->add_option("--empirical-traj", config.empirical_traj, "Trajectories per cell");
    phase->add_option("--empirical-steps", config.empirical_steps, "Steps per trajectory");
    phase->add_option("--seed", config.seed, "Base seed for empirical overlays");
    phase->add_option("--out", config.out_dir, "Output directory (must exist)");

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_flag("--quick", config.quick, "Analytic criteria only (skips ensembles)");
    verify->add_option("--seed", config.seed, "Base seed for ensemble criteria");
    verify->add_option("--threads", config.threads, "Worker threads");
    verify->add_option("--out", config.out_dir, "Also write the report and sidecar here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    // Defaults that depend on the chosen family.
    if (config.model_kind == "cyclic" && config.a == 0.0) config.a = 1.0;
    if (config.model_kind == "two-type") config.d = 2;
    if (config.model_kind == "cyclic") config.d = 3;

    config.subcommand = app.get_subcommands().front()->get_name();
    try {
        urnlab::validate(config);
        if (config.subcommand == "simulate") return cmd_simulate(config);
        if (config.subcommand == "analyze") return cmd_analyze(config);
        if (config.subcommand == "phase") return cmd_phase(config);
        return cmd_verify(config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
