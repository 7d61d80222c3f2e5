#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace urnlab {

using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Largest ball total the simulator accepts: beyond 2^53 the integer counts
/// are no longer exactly representable as doubles.
inline constexpr std::int64_t kMaxExactTotal = std::int64_t{1} << 53;

/// Structural families of the interaction matrix. Symmetric and Cyclic carry
/// the off-diagonal strength `a` and get closed-form fast paths; General is
/// an arbitrary nonnegative matrix.
enum class ModelKind { Symmetric, Cyclic, General };

/// The urn model: d colours, interaction matrix A, reinforcement exponent
/// beta. Colour i is drawn with probability proportional to (A * counts^beta)_i.
struct ModelSpec {
    ModelKind kind = ModelKind::General;
    int d = 0;
    double beta = 0.0;
    Eigen::MatrixXd A;
    // Off-diagonal strength for Symmetric/Cyclic kinds; unused for General.
    double a = 0.0;
    // Set once at construction when beta is a small integer; lets the hot
    // loop use repeated multiplication instead of std::pow.
    int beta_int = -1;

    void validate() const;
};

ModelSpec symmetric_model(int d, double a, double beta);
ModelSpec cyclic_model(double a, double beta);
ModelSpec general_model(const Eigen::MatrixXd& A, double beta);
/// Two-colour urn with symmetric interaction strength a.
inline ModelSpec two_type_model(double a, double beta) { return symmetric_model(2, a, beta); }

/// A point of the probability simplex: nonnegative coordinates summing to 1.
struct SimplexPoint {
    Eigen::VectorXd coords;

    SimplexPoint() = default;
    explicit SimplexPoint(Eigen::VectorXd c, double tol = 1e-12);

    int dim() const { return static_cast<int>(coords.size()); }
    double operator[](int i) const { return coords[i]; }
};

SimplexPoint simplex_center(int d);

/// Ball counts plus elapsed steps. sum(counts) == n0 + n always holds.
struct UrnState {
    CountVector counts;
    std::int64_t n0 = 0;
    std::int64_t n = 0;

    UrnState() = default;
    UrnState(CountVector c, std::int64_t n0_, std::int64_t n_);

    std::int64_t total() const { return n0 + n; }
    void validate() const;
};

/// Fresh urn with one ball of each colour.
UrnState initial_state(int d);
UrnState initial_state(CountVector counts);

SimplexPoint proportions(const UrnState& state);

/// A thinned sample path of the proportion process.
struct TrajectoryRecord {
    std::vector<std::int64_t> sample_steps;
    std::vector<SimplexPoint> points;
    std::uint64_t seed = 0;
    ModelSpec model;
    UrnState final_state;

    std::size_t size() const { return points.size(); }
};

}  // namespace urnlab
