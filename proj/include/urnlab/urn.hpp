#pragma once

#include "urnlab/model.hpp"
#include "urnlab/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace urnlab {

/// Probability that the next ball is of each colour, given any nonnegative
/// weight vector v (ball counts or proportions): p = u / sum(u) with
/// u = A * v^beta. Scale-invariant in v; v is normalized by its maximum
/// before powering so large counts and exponents cannot overflow.
///
/// For the Symmetric kind the combination a*S + (1-a)*v_i^beta is used with a
/// permutation-invariant sum S, so permuting v permutes the result exactly.
Eigen::VectorXd selection_probabilities(const ModelSpec& model, const Eigen::VectorXd& v);

/// Colour distribution of the next draw from the urn.
Eigen::VectorXd transition_probabilities(const ModelSpec& model, const UrnState& state);

/// Draw one ball, add one of the drawn colour. Returns the colour index.
int step(const ModelSpec& model, UrnState& state, Rng& rng);

struct SimulateOptions {
    std::int64_t thinning = 100;
};

/// Run the chain for `steps` draws from `initial`, recording the proportion
/// vector every `thinning` steps (plus the initial and final states).
TrajectoryRecord simulate(const ModelSpec& model, const UrnState& initial,
                          std::int64_t steps, std::uint64_t seed,
                          const SimulateOptions& options = {});

}  // namespace urnlab
