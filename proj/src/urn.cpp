#include "urnlab/urn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace urnlab {

namespace {

double pow_beta(double x, double beta, int beta_int) {
    if (beta_int > 0) {
        double acc = 1.0;
        double base = x;
        int e = beta_int;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }
    return std::pow(x, beta);
}

// Sum in ascending value order: independent of the input ordering.
double permutation_invariant_sum(Eigen::VectorXd w) {
    std::sort(w.data(), w.data() + w.size());
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) s += w[i];
    return s;
}

}  // namespace

Eigen::VectorXd selection_probabilities(const ModelSpec& model, const Eigen::VectorXd& v) {
    const int d = model.d;
    if (v.size() != d) throw std::invalid_argument("selection_probabilities: dimension mismatch");
    const double vmax = v.maxCoeff();
    if (!(vmax > 0.0)) throw std::invalid_argument("selection_probabilities: no positive weight");

    Eigen::VectorXd w(d);
    for (int i = 0; i < d; ++i) w[i] = pow_beta(v[i] / vmax, model.beta, model.beta_int);

    Eigen::VectorXd u(d);
    double total = 0.0;
    switch (model.kind) {
        case ModelKind::Symmetric: {
            const double s = permutation_invariant_sum(w);
            for (int i = 0; i < d; ++i) u[i] = model.a * s + (1.0 - model.a) * w[i];
            total = (1.0 + (d - 1) * model.a) * s;
            break;
        }
        case ModelKind::Cyclic: {
            for (int i = 0; i < 3; ++i) u[i] = w[i] + model.a * w[(i + 1) % 3];
            total = u.sum();
            break;
        }
        case ModelKind::General: {
            u = model.A * w;
            total = u.sum();
            break;
        }
    }
    if (!(total > 0.0))
        throw std::runtime_error("selection_probabilities: total weight is zero (malformed A)");
    return u / total;
}

Eigen::VectorXd transition_probabilities(const ModelSpec& model, const UrnState& state) {
    if (state.counts.size() != model.d)
        throw std::invalid_argument("transition_probabilities: state/model dimension mismatch");
    return selection_probabilities(model, state.counts.cast<double>());
}

int step(const ModelSpec& model, UrnState& state, Rng& rng) {
    const Eigen::VectorXd p = transition_probabilities(model, state);
    const double ticket = rng.uniform();
    int colour = model.d - 1;
    double cdf = 0.0;
    for (int i = 0; i < model.d; ++i) {
        cdf += p[i];
        if (ticket < cdf) {
            colour = i;
            break;
        }
    }
    state.counts[colour] += 1;
    state.n += 1;
    return colour;
}

TrajectoryRecord simulate(const ModelSpec& model, const UrnState& initial,
                          std::int64_t steps, std::uint64_t seed,
                          const SimulateOptions& options) {
    if (steps < 1) throw std::invalid_argument("simulate: steps must be >= 1");
    if (options.thinning < 1) throw std::invalid_argument("simulate: thinning must be >= 1");
    initial.validate();
    if (initial.total() + steps > kMaxExactTotal)
        throw std::overflow_error("simulate: n0 + steps exceeds exactly representable range");

    TrajectoryRecord record;
    record.seed = seed;
    record.model = model;
    record.sample_steps.reserve(static_cast<std::size_t>(steps / options.thinning) + 2);
    record.points.reserve(record.sample_steps.capacity());

    UrnState state = initial;
    Rng rng(seed);

    record.sample_steps.push_back(state.n);
    record.points.push_back(proportions(state));
    for (std::int64_t k = 1; k <= steps; ++k) {
        step(model, state, rng);
        if (k % options.thinning == 0 || k == steps) {
            record.sample_steps.push_back(state.n);
            record.points.push_back(proportions(state));
        }
    }
    record.final_state = state;
    return record;
}

}  // namespace urnlab
