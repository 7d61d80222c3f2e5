#include "urnlab/stationary.hpp"

#include "urnlab/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace urnlab {

namespace {

SimplexPoint point_from_root(double r, std::optional<int> axis) {
    Eigen::Vector3d x = Eigen::Vector3d::Constant(1.0 / (r + 2.0));
    if (axis) x[*axis] = r / (r + 2.0);
    // Rebalance the rounding residue so the invariant holds exactly.
    x[axis.value_or(2)] += 1.0 - x.sum();
    return SimplexPoint(Eigen::VectorXd(x));
}

Stability stability_from_eigenvalues(const Eigen::Matrix2d& jac, double tol = 1e-9) {
    const auto eigs = eigenvalues_2x2(jac);
    const double max_real = std::max(eigs[0].real(), eigs[1].real());
    if (std::abs(max_real) < tol) return Stability::Marginal;
    return max_real < 0.0 ? Stability::LinearlyStable : Stability::LinearlyUnstable;
}

}  // namespace

std::string to_string(Stability s) {
    switch (s) {
        case Stability::LinearlyStable: return "LinearlyStable";
        case Stability::LinearlyUnstable: return "LinearlyUnstable";
        case Stability::Marginal: return "Marginal";
    }
    return "Marginal";
}

std::string to_string(SymmetricPhaseLabel label) {
    switch (label) {
        case SymmetricPhaseLabel::SymmetricOnly: return "SymmetricOnly";
        case SymmetricPhaseLabel::Coexistence: return "Coexistence";
        case SymmetricPhaseLabel::AsymmetricOnly: return "AsymmetricOnly";
        case SymmetricPhaseLabel::SupercriticalA: return "SupercriticalA";
    }
    return "SupercriticalA";
}

Stability classify_stationary(double a, double beta, double r, double tol) {
    const PolyParams params{a, beta, PolyVariant::ThreeTypeSymmetric};
    const PolyValue pv = poly_eval(params, r);
    if (std::abs(pv.value) > 1e-8)
        throw std::invalid_argument("classify_stationary: r is not a root of the polynomial");

    const double along_line = pv.derivative;
    const double transverse =
        (std::pow(r, beta) + 2.0) / (r + 2.0) - beta * (1.0 - a) / (2.0 * a + 1.0);
    if (std::abs(along_line) < tol || std::abs(transverse) < tol) return Stability::Marginal;
    if (along_line > 0.0 && transverse > 0.0) return Stability::LinearlyStable;
    return Stability::LinearlyUnstable;
}

std::vector<StationaryPoint> enumerate_stationary_points(double a, double beta) {
    const auto roots = find_positive_roots({a, beta, PolyVariant::ThreeTypeSymmetric});
    std::vector<StationaryPoint> points;
    points.push_back({simplex_center(3), 1.0, std::nullopt, classify_stationary(a, beta, 1.0), 1});
    for (const Root& root : roots) {
        if (root.z == 1.0) continue;
        const Stability stability = classify_stationary(a, beta, root.z);
        for (int axis = 0; axis < 3; ++axis)
            points.push_back(
                {point_from_root(root.z, axis), root.z, axis, stability, root.multiplicity});
    }
    return points;
}

std::vector<StationaryPoint> two_type_stationary_points(double a, double beta) {
    const double criterion = (1.0 - a) / (1.0 + a) * beta;
    std::vector<StationaryPoint> points;
    Stability center = Stability::Marginal;
    if (std::abs(criterion - 1.0) >= 1e-9)
        center = criterion < 1.0 ? Stability::LinearlyStable : Stability::LinearlyUnstable;
    points.push_back(
        {SimplexPoint(Eigen::VectorXd::Constant(2, 0.5)), 1.0, std::nullopt, center, 1});
    if (const auto r = two_type_root(a, beta)) {
        for (int axis = 0; axis < 2; ++axis) {
            Eigen::VectorXd x(2);
            x[axis] = *r / (1.0 + *r);
            x[1 - axis] = 1.0 - x[axis];
            points.push_back({SimplexPoint(x), *r, axis, Stability::LinearlyStable, 1});
        }
    }
    return points;
}

SymmetricPhase phase_symmetric(double a, double beta) {
    if (!(a > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("phase_symmetric: need a > 0 and beta > 0");
    SymmetricPhase phase;
    if (a >= 1.0) {
        phase.label = SymmetricPhaseLabel::SupercriticalA;
        phase.near_boundary = std::abs(a - 1.0) < 1e-9;
        return phase;
    }
    phase.beta1 = beta1(a);
    phase.upper = (1.0 + 2.0 * a) / (1.0 - a);
    if (beta < *phase.beta1)
        phase.label = SymmetricPhaseLabel::SymmetricOnly;
    else if (beta < *phase.upper)
        phase.label = SymmetricPhaseLabel::Coexistence;
    else
        phase.label = SymmetricPhaseLabel::AsymmetricOnly;
    phase.near_boundary =
        std::abs(beta - *phase.beta1) < 1e-9 || std::abs(beta - *phase.upper) < 1e-9;
    return phase;
}

Stability cyclic_center_stability(double a, double beta, double tol) {
    if (!(a > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("cyclic_center_stability: need a > 0 and beta > 0");
    if (a >= 2.0) return Stability::LinearlyStable;
    const double threshold = 2.0 * (1.0 + a) / (2.0 - a);
    if (std::abs(beta - threshold) < tol) return Stability::Marginal;
    return beta < threshold ? Stability::LinearlyStable : Stability::LinearlyUnstable;
}

StationarySearchResult stationary_search(const ModelSpec& model, const SearchOptions& options) {
    if (model.d != 3)
        throw std::invalid_argument("stationary_search: grid search is defined on the 2-simplex");
    const int res = options.grid_resolution;
    if (res < 8) throw std::invalid_argument("stationary_search: grid resolution too small");

    const auto field = [&](const Eigen::Vector3d& x) -> Eigen::Vector3d {
        return drift(model, Eigen::VectorXd(x));
    };
    const auto norm_at = [&](const Eigen::Vector2d& y) { return field(unchart(y)).norm(); };

    // |F| on the interior grid; candidate seeds at local minima.
    Eigen::MatrixXd norms = Eigen::MatrixXd::Constant(res + 1, res + 1, -1.0);
    for (int i = 1; i < res; ++i)
        for (int j = 1; j < res - i; ++j)
            norms(i, j) = norm_at({double(i) / res, double(j) / res});

    std::vector<Eigen::Vector2d> seeds;
    seeds.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    for (int i = 1; i < res; ++i) {
        for (int j = 1; j < res - i; ++j) {
            const double v = norms(i, j);
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1 && is_min; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const double nb = norms(i + di, j + dj);
                    if (nb >= 0.0 && nb < v) is_min = false;
                }
            if (is_min) seeds.emplace_back(double(i) / res, double(j) / res);
        }
    }

    StationarySearchResult result;
    std::vector<Eigen::Vector2d> found;
    const double interior_margin = 2e-6;
    for (const Eigen::Vector2d& seed : seeds) {
        Eigen::Vector2d y = seed;
        bool converged = false;
        bool lost = false;
        for (int it = 0; it < 80; ++it) {
            const Eigen::Vector3d x = unchart(y);
            if (x.minCoeff() < interior_margin) {
                lost = true;
                break;
            }
            const Eigen::Vector3d f = field(x);
            if (f.lpNorm<Eigen::Infinity>() < 0.3 * options.residual_tol) {
                converged = true;
                break;
            }
            const Eigen::Matrix2d jac = jacobian_reduced(field, x);
            const Eigen::Vector2d g(f[0], f[1]);
            const Eigen::Vector2d delta = jac.fullPivLu().solve(-g);
            if (!delta.allFinite()) {
                lost = true;
                break;
            }
            // Damp until the residual shrinks and the iterate stays interior.
            double t = 1.0;
            const double base = f.norm();
            bool moved = false;
            while (t > 1.0 / 1024.0) {
                const Eigen::Vector2d trial = y + t * delta;
                if (unchart(trial).minCoeff() > interior_margin && norm_at(trial) < base) {
                    y = trial;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if (!moved) break;  // stalled
        }

        if (converged) {
            const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& q) {
                return (q - y).norm() < 1e-7;
            });
            if (duplicate) continue;
            found.push_back(y);
            const Eigen::Vector3d x = unchart(y);
            StationaryPoint point;
            point.location = SimplexPoint(Eigen::VectorXd(x), 1e-9);
            point.stability = stability_from_eigenvalues(jacobian_reduced(field, x));
            if ((x - Eigen::Vector3d::Constant(1.0 / 3.0)).norm() < 1e-9) {
                point.r = 1.0;
            }
            result.points.push_back(std::move(point));
        } else if (!lost && norm_at(y) < options.candidate_floor) {
            result.unrefined.push_back(SimplexPoint(Eigen::VectorXd(unchart(y)), 1e-9));
        }
    }

    // Deterministic order: centre first, then lexicographic by location.
    std::sort(result.points.begin(), result.points.end(),
              [](const StationaryPoint& lhs, const StationaryPoint& rhs) {
                  const bool lc = lhs.r.has_value(), rc = rhs.r.has_value();
                  if (lc != rc) return lc;
                  if (lhs.location.coords[0] != rhs.location.coords[0])
                      return lhs.location.coords[0] < rhs.location.coords[0];
                  return lhs.location.coords[1] < rhs.location.coords[1];
              });
    return result;
}

StationarySearchResult cyclic_stationary_search(double a, double beta,
                                                const SearchOptions& options) {
    return stationary_search(cyclic_model(a, beta), options);
}

}  // namespace urnlab
