#pragma once

#include "urnlab/model.hpp"
#include "urnlab/stationary.hpp"
#include "urnlab/urn.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace urnlab {

struct ClassifyOptions {
    double point_tol = 0.02;     // max distance of the tail from a stationary point
    double winding_min = 3.0;    // full turns around the centre
    double radius_min = 0.05;    // orbit radius floor (chart coordinates)
    double tail_fraction = 0.1;  // tail window, as a fraction of the samples
};

enum class Verdict { PointLimit, Cycling, Undetermined };

std::string to_string(Verdict v);

/// Where one trajectory ended up.
///  - PointLimit: the whole tail window stayed within point_tol of one
///    stationary point (point_index into the supplied list).
///  - Cycling: the path accumulated >= winding_min turns around the centre
///    while at radius >= radius_min, and the tail never fell below that
///    radius. (The turning is counted over the full record: the step sizes
///    shrink like 1/n, so the tail alone covers only a sliver of flow time.)
///  - Undetermined: anything else.
struct LimitClassification {
    Verdict verdict = Verdict::Undetermined;
    std::optional<int> point_index;
    double final_distance = 0.0;
    double winding_turns = 0.0;
    double tail_min_radius = 0.0;
    double tail_max_radius = 0.0;
    double tail_oscillation = 0.0;  // max distance of a tail sample from the tail mean
    Eigen::VectorXd tail_mean;
};

LimitClassification classify_limit(const TrajectoryRecord& trajectory,
                                   const std::vector<StationaryPoint>& points,
                                   const ClassifyOptions& options = {});

struct EnsembleOptions {
    std::int64_t thinning = 100;
    ClassifyOptions classify;
    std::optional<CountVector> initial;  // default: one ball per colour
    int threads = 0;                     // 0 = URNLAB_THREADS / hardware
    int search_resolution = 300;         // stationary search fallback (general matrices)
    bool keep_trajectories = false;      // retain full records in the summary
};

struct EnsembleSummary {
    ModelSpec model;
    int n_traj = 0;
    std::int64_t steps = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<StationaryPoint> points;
    std::vector<int> hits;  // PointLimit counts, aligned with `points`
    int cycling = 0;
    int undetermined = 0;
    std::vector<LimitClassification> verdicts;
    std::vector<SimplexPoint> final_points;
    std::vector<TrajectoryRecord> trajectories;  // only when keep_trajectories
};

/// Stationary points used to classify trajectories of `model`: closed-form
/// enumeration for the symmetric family (d = 2, 3), the centre for cyclic
/// a = 1, grid search otherwise (d = 3), and the centre alone as fallback.
std::vector<StationaryPoint> reference_stationary_points(const ModelSpec& model,
                                                         int search_resolution = 300);

/// n_traj independent trajectories from the one-ball-per-colour start;
/// trajectory i runs on stream_seed(base_seed, i). Deterministic for fixed
/// inputs regardless of thread count.
EnsembleSummary run_ensemble(const ModelSpec& model, int n_traj, std::int64_t steps,
                             std::uint64_t base_seed, const EnsembleOptions& options = {});
EnsembleSummary run_ensemble(const ModelSpec& model, int n_traj, std::int64_t steps,
                             std::uint64_t base_seed, std::vector<StationaryPoint> points,
                             const EnsembleOptions& options = {});

/// Minimum over a grid of unit tangent directions theta of the exact one-step
/// expectation E[max(xi . theta, 0)] at proportions x, where xi is the
/// centred draw noise. Positive values mean the noise pushes in every tangent
/// direction. d = 3 only; no sampling involved.
double noise_positivity_check(const ModelSpec& model, const SimplexPoint& x, int directions);

}  // namespace urnlab
