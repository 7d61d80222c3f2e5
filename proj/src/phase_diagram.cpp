#include "urnlab/phase_diagram.hpp"

#include <cmath>
#include <stdexcept>

namespace urnlab {

namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw std::invalid_argument(std::string(name) + ": empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw std::invalid_argument(std::string(name) + ": grid must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument(std::string(name) + ": grid must be strictly increasing");
    }
}

bool search_finds_extra_stable(double a, double beta, int resolution) {
    SearchOptions opts;
    opts.grid_resolution = resolution;
    const auto result = cyclic_stationary_search(a, beta, opts);
    for (const StationaryPoint& p : result.points) {
        const bool is_center =
            (p.location.coords - Eigen::VectorXd::Constant(3, 1.0 / 3.0)).norm() < 1e-6;
        if (!is_center && p.stability == Stability::LinearlyStable) return true;
    }
    return false;
}

}  // namespace

PhaseGrid sweep_symmetric(std::vector<double> a_grid, std::vector<double> beta_grid) {
    check_grid(a_grid, "sweep_symmetric(a)");
    check_grid(beta_grid, "sweep_symmetric(beta)");
    PhaseGrid grid;
    grid.a_grid = std::move(a_grid);
    grid.beta_grid = std::move(beta_grid);
    grid.labels.reserve(grid.a_grid.size() * grid.beta_grid.size());
    for (const double a : grid.a_grid) {
        std::optional<double> lower, upper;
        if (a < 1.0) {
            lower = beta1(a);
            upper = (1.0 + 2.0 * a) / (1.0 - a);
        }
        for (const double beta : grid.beta_grid) {
            const bool marginal =
                std::abs(a - 1.0) < kSweepBoundaryTol ||
                (lower && std::abs(beta - *lower) < kSweepBoundaryTol) ||
                (upper && std::abs(beta - *upper) < kSweepBoundaryTol);
            if (marginal) {
                grid.labels.emplace_back("Marginal");
                continue;
            }
            if (a >= 1.0) {
                grid.labels.emplace_back(to_string(SymmetricPhaseLabel::SupercriticalA));
            } else if (beta < *lower) {
                grid.labels.emplace_back(to_string(SymmetricPhaseLabel::SymmetricOnly));
            } else if (beta < *upper) {
                grid.labels.emplace_back(to_string(SymmetricPhaseLabel::Coexistence));
            } else {
                grid.labels.emplace_back(to_string(SymmetricPhaseLabel::AsymmetricOnly));
            }
        }
    }
    return grid;
}

BoundaryCurves boundary_curves(const std::vector<double>& a_grid) {
    check_grid(a_grid, "boundary_curves");
    if (a_grid.back() >= 1.0)
        throw std::invalid_argument("boundary_curves: a grid must lie in (0, 1)");
    BoundaryCurves curves;
    curves.a = a_grid;
    for (const double a : a_grid) {
        const double lower = beta1(a);
        const double upper = (1.0 + 2.0 * a) / (1.0 - a);
        if (!(1.0 < lower && lower < upper))
            throw std::runtime_error("boundary_curves: ordering 1 < beta1 < upper violated");
        if (!curves.beta1_curve.empty() &&
            (lower < curves.beta1_curve.back() || upper < curves.upper_curve.back()))
            throw std::runtime_error("boundary_curves: boundary curves must be nondecreasing");
        curves.beta1_curve.push_back(lower);
        curves.upper_curve.push_back(upper);
    }
    return curves;
}

PhaseGrid sweep_cyclic(std::vector<double> a_grid, std::vector<double> beta_grid,
                       const CyclicSweepOptions& options) {
    check_grid(a_grid, "sweep_cyclic(a)");
    check_grid(beta_grid, "sweep_cyclic(beta)");
    PhaseGrid grid;
    grid.a_grid = std::move(a_grid);
    grid.beta_grid = std::move(beta_grid);
    grid.labels.reserve(grid.a_grid.size() * grid.beta_grid.size());
    if (options.with_search) grid.extra_stable.reserve(grid.labels.capacity());
    for (const double a : grid.a_grid) {
        for (const double beta : grid.beta_grid) {
            switch (cyclic_center_stability(a, beta, kSweepBoundaryTol)) {
                case Stability::LinearlyStable: grid.labels.emplace_back("CenterStable"); break;
                case Stability::LinearlyUnstable: grid.labels.emplace_back("CenterUnstable"); break;
                case Stability::Marginal: grid.labels.emplace_back("Marginal"); break;
            }
            if (options.with_search)
                grid.extra_stable.push_back(
                    search_finds_extra_stable(a, beta, options.search_resolution) ? 1 : 0);
        }
    }
    return grid;
}

std::vector<BoundaryCrossing> refine_crossings(
    const PhaseGrid& grid, const std::function<std::string(double a, double beta)>& labeller,
    double tol) {
    std::vector<BoundaryCrossing> crossings;
    const auto bisect_between = [&](double a_lo, double b_lo, double a_hi, double b_hi) {
        std::string lo_label = labeller(a_lo, b_lo);
        const std::string hi_label = labeller(a_hi, b_hi);
        if (lo_label == hi_label) return;
        double lo_a = a_lo, lo_b = b_lo, hi_a = a_hi, hi_b = b_hi;
        while (std::hypot(hi_a - lo_a, hi_b - lo_b) > tol) {
            const double mid_a = 0.5 * (lo_a + hi_a);
            const double mid_b = 0.5 * (lo_b + hi_b);
            if (labeller(mid_a, mid_b) == lo_label) {
                lo_a = mid_a;
                lo_b = mid_b;
            } else {
                hi_a = mid_a;
                hi_b = mid_b;
            }
        }
        crossings.push_back({0.5 * (lo_a + hi_a), 0.5 * (lo_b + hi_b), lo_label, hi_label});
    };

    for (std::size_t i = 0; i < grid.a_grid.size(); ++i)
        for (std::size_t j = 0; j + 1 < grid.beta_grid.size(); ++j)
            bisect_between(grid.a_grid[i], grid.beta_grid[j], grid.a_grid[i],
                           grid.beta_grid[j + 1]);
    for (std::size_t j = 0; j < grid.beta_grid.size(); ++j)
        for (std::size_t i = 0; i + 1 < grid.a_grid.size(); ++i)
            bisect_between(grid.a_grid[i], grid.beta_grid[j], grid.a_grid[i + 1],
                           grid.beta_grid[j]);
    return crossings;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("linear_grid: bad range");
    std::vector<double> grid;
    const auto count = static_cast<int>(std::round((hi - lo) / step));
    for (int k = 0; k <= count; ++k) grid.push_back(lo + k * step);
    return grid;
}

}  // namespace urnlab
