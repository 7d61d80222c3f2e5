#pragma once

#include "urnlab/stationary.hpp"

#include <functional>
#include <string>
#include <vector>

namespace urnlab {

/// Labelled (a, beta) grid. Cells are stored row-major: cell(i, j) pairs
/// a_grid[i] with beta_grid[j].
struct PhaseGrid {
    std::vector<double> a_grid;
    std::vector<double> beta_grid;
    std::vector<std::string> labels;
    // Cyclic sweeps with search enabled: 1 where stable non-centre points exist.
    std::vector<int> extra_stable;
    // Optional empirical agreement flags (one per cell, -1 unknown / 0 / 1).
    std::vector<int> empirical;

    std::size_t index(std::size_t i, std::size_t j) const { return i * beta_grid.size() + j; }
    const std::string& label(std::size_t i, std::size_t j) const { return labels[index(i, j)]; }
};

/// Cells within this distance of a phase boundary are labelled "Marginal".
inline constexpr double kSweepBoundaryTol = 1e-6;

PhaseGrid sweep_symmetric(std::vector<double> a_grid, std::vector<double> beta_grid);

struct BoundaryCurves {
    std::vector<double> a;
    std::vector<double> beta1_curve;  // lower boundary beta1(a)
    std::vector<double> upper_curve;  // (1+2a)/(1-a)
};

/// Both symmetric phase boundaries over an a-grid in (0, 1); verifies the
/// ordering 1 < beta1(a) < (1+2a)/(1-a) and monotonicity at every grid point.
BoundaryCurves boundary_curves(const std::vector<double>& a_grid);

struct CyclicSweepOptions {
    bool with_search = false;
    int search_resolution = 200;
};

PhaseGrid sweep_cyclic(std::vector<double> a_grid, std::vector<double> beta_grid,
                       const CyclicSweepOptions& options = {});

/// A label change between adjacent cells, refined by bisection of the
/// labelling function along the connecting axis.
struct BoundaryCrossing {
    double a = 0.0;
    double beta = 0.0;
    std::string lower_label;
    std::string upper_label;
};

/// Scan grid rows and columns of `grid` re-labelled by `labeller` and refine
/// each label change to within `tol` along the crossing axis.
std::vector<BoundaryCrossing> refine_crossings(
    const PhaseGrid& grid, const std::function<std::string(double a, double beta)>& labeller,
    double tol = 1e-4);

/// Evenly spaced closed grid, rounded to the step lattice.
std::vector<double> linear_grid(double lo, double hi, double step);

}  // namespace urnlab
