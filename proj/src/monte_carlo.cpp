#include "urnlab/monte_carlo.hpp"

#include "urnlab/parallel.hpp"
#include "urnlab/vector_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace urnlab {

namespace {

double wrap_angle(double a) {
    while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
    while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
    return a;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::PointLimit: return "PointLimit";
        case Verdict::Cycling: return "Cycling";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

LimitClassification classify_limit(const TrajectoryRecord& trajectory,
                                   const std::vector<StationaryPoint>& points,
                                   const ClassifyOptions& options) {
    const auto m = static_cast<std::int64_t>(trajectory.size());
    const auto tail_count =
        static_cast<std::int64_t>(std::ceil(options.tail_fraction * static_cast<double>(m)));
    if (tail_count < 100)
        throw std::invalid_argument("classify_limit: need at least 100 tail samples");
    const std::int64_t tail_begin = m - tail_count;
    const int d = trajectory.points.front().dim();

    LimitClassification result;
    result.tail_mean = Eigen::VectorXd::Zero(d);
    for (std::int64_t t = tail_begin; t < m; ++t)
        result.tail_mean += trajectory.points[static_cast<std::size_t>(t)].coords;
    result.tail_mean /= static_cast<double>(tail_count);

    for (std::int64_t t = tail_begin; t < m; ++t) {
        const double dist =
            (trajectory.points[static_cast<std::size_t>(t)].coords - result.tail_mean).norm();
        result.tail_oscillation = std::max(result.tail_oscillation, dist);
    }

    // Point limit: the whole tail inside the point_tol ball of one point.
    int nearest = -1;
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        const double dist = (points[static_cast<std::size_t>(i)].location.coords -
                             result.tail_mean).norm();
        if (dist < nearest_dist) {
            nearest_dist = dist;
            nearest = i;
        }
    }
    if (nearest >= 0) {
        const auto& target = points[static_cast<std::size_t>(nearest)].location.coords;
        bool inside = true;
        for (std::int64_t t = tail_begin; t < m && inside; ++t)
            inside = (trajectory.points[static_cast<std::size_t>(t)].coords - target).norm() <=
                     options.point_tol;
        if (inside) {
            result.verdict = Verdict::PointLimit;
            result.point_index = nearest;
            result.final_distance = (trajectory.points.back().coords - target).norm();
            return result;
        }
    } else if (result.tail_oscillation <= options.point_tol) {
        throw std::invalid_argument(
            "classify_limit: tail has settled but the stationary-point list is empty");
    }

    if (d == 3) {
        // Winding about the centre, counted wherever the path is at
        // macroscopic radius; radius extremes over the tail.
        const Eigen::Vector2d center(1.0 / 3.0, 1.0 / 3.0);
        double total_angle = 0.0;
        bool have_prev = false;
        double prev_angle = 0.0;
        result.tail_min_radius = std::numeric_limits<double>::infinity();
        for (std::int64_t t = 0; t < m; ++t) {
            const auto& x = trajectory.points[static_cast<std::size_t>(t)].coords;
            const Eigen::Vector2d v = Eigen::Vector2d(x[0], x[1]) - center;
            const double radius = v.norm();
            if (t >= tail_begin) {
                result.tail_min_radius = std::min(result.tail_min_radius, radius);
                result.tail_max_radius = std::max(result.tail_max_radius, radius);
            }
            if (radius >= options.radius_min) {
                const double angle = std::atan2(v[1], v[0]);
                if (have_prev) total_angle += wrap_angle(angle - prev_angle);
                prev_angle = angle;
                have_prev = true;
            } else {
                have_prev = false;
            }
        }
        result.winding_turns = std::abs(total_angle) / (2.0 * std::numbers::pi);
        if (result.winding_turns >= options.winding_min &&
            result.tail_min_radius >= options.radius_min) {
            result.verdict = Verdict::Cycling;
            return result;
        }
    }

    result.verdict = Verdict::Undetermined;
    return result;
}

std::vector<StationaryPoint> reference_stationary_points(const ModelSpec& model,
                                                         int search_resolution) {
    if (model.kind == ModelKind::Symmetric) {
        if (model.d == 2) return two_type_stationary_points(model.a, model.beta);
        if (model.d == 3) return enumerate_stationary_points(model.a, model.beta);
    }
    if (model.kind == ModelKind::Cyclic) {
        if (model.a == 1.0) {
            // The centre is the only stationary point of the a = 1 flow.
            return {{simplex_center(3), 1.0, std::nullopt,
                     cyclic_center_stability(model.a, model.beta), 1}};
        }
        SearchOptions opts;
        opts.grid_resolution = search_resolution;
        return stationary_search(model, opts).points;
    }
    if (model.d == 3) {
        SearchOptions opts;
        opts.grid_resolution = search_resolution;
        return stationary_search(model, opts).points;
    }
    // No closed form and no 2-simplex to scan: classify against the centre.
    StationaryPoint center{simplex_center(model.d), std::nullopt, std::nullopt,
                           Stability::Marginal, 1};
    return {center};
}

EnsembleSummary run_ensemble(const ModelSpec& model, int n_traj, std::int64_t steps,
                             std::uint64_t base_seed, const EnsembleOptions& options) {
    return run_ensemble(model, n_traj, steps, base_seed,
                        reference_stationary_points(model, options.search_resolution), options);
}

EnsembleSummary run_ensemble(const ModelSpec& model, int n_traj, std::int64_t steps,
                             std::uint64_t base_seed, std::vector<StationaryPoint> points,
                             const EnsembleOptions& options) {
    if (n_traj < 1) throw std::invalid_argument("run_ensemble: need at least one trajectory");

    EnsembleSummary summary;
    summary.model = model;
    summary.n_traj = n_traj;
    summary.steps = steps;
    summary.points = std::move(points);
    summary.hits.assign(summary.points.size(), 0);
    summary.seeds.resize(static_cast<std::size_t>(n_traj));
    summary.verdicts.resize(static_cast<std::size_t>(n_traj));
    summary.final_points.resize(static_cast<std::size_t>(n_traj));
    if (options.keep_trajectories) summary.trajectories.resize(static_cast<std::size_t>(n_traj));

    const UrnState start =
        options.initial ? initial_state(*options.initial) : initial_state(model.d);
    SimulateOptions sim_opts;
    sim_opts.thinning = options.thinning;

    parallel_for_index(n_traj, options.threads, [&](int i) {
        const std::uint64_t seed = stream_seed(base_seed, static_cast<std::uint64_t>(i));
        TrajectoryRecord record = simulate(model, start, steps, seed, sim_opts);
        const auto slot = static_cast<std::size_t>(i);
        summary.seeds[slot] = seed;
        summary.verdicts[slot] = classify_limit(record, summary.points, options.classify);
        summary.final_points[slot] = record.points.back();
        if (options.keep_trajectories) summary.trajectories[slot] = std::move(record);
    });

    for (const LimitClassification& v : summary.verdicts) {
        switch (v.verdict) {
            case Verdict::PointLimit:
                summary.hits[static_cast<std::size_t>(*v.point_index)] += 1;
                break;
            case Verdict::Cycling: summary.cycling += 1; break;
            case Verdict::Undetermined: summary.undetermined += 1; break;
        }
    }
    return summary;
}

double noise_positivity_check(const ModelSpec& model, const SimplexPoint& x, int directions) {
    if (model.d != 3)
        throw std::invalid_argument("noise_positivity_check: defined on the 2-simplex");
    if (directions < 8)
        throw std::invalid_argument("noise_positivity_check: need at least 8 directions");
    if (x.coords.minCoeff() <= 0.0)
        throw std::invalid_argument("noise_positivity_check: need an interior point");

    const Eigen::VectorXd p = selection_probabilities(model, x.coords);
    const Eigen::Vector3d b1 = Eigen::Vector3d(1.0, -1.0, 0.0) / std::sqrt(2.0);
    const Eigen::Vector3d b2 = Eigen::Vector3d(1.0, 1.0, -2.0) / std::sqrt(6.0);

    double minimum = std::numeric_limits<double>::infinity();
    for (int k = 0; k < directions; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / directions;
        const Eigen::Vector3d theta = std::cos(phi) * b1 + std::sin(phi) * b2;
        const double drift_component = p.dot(theta);
        // E[max(xi . theta, 0)] = sum_i p_i max(theta_i - p.theta, 0).
        const double value =
            (p.array() * (theta.array() - drift_component).max(0.0)).sum();
        minimum = std::min(minimum, value);
    }
    return minimum;
}

}  // namespace urnlab
