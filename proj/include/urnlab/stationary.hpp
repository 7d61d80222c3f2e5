#pragma once

#include "urnlab/model.hpp"
#include "urnlab/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace urnlab {

enum class Stability { LinearlyStable, LinearlyUnstable, Marginal };

std::string to_string(Stability s);

/// A zero of the drift. For the symmetric three-type family the location is
/// built from a polynomial root r as (1/(r+2), 1/(r+2), r/(r+2)) with `axis`
/// naming the coordinate that carries r; r and axis are absent for points
/// found by grid search (general matrices) and for the centre.
struct StationaryPoint {
    SimplexPoint location;
    std::optional<double> r;
    std::optional<int> axis;
    Stability stability = Stability::Marginal;
    int multiplicity = 1;
};

/// Linear stability of the symmetric-model stationary point generated by root
/// r: stable iff P'(r) > 0 and (r^b + 2)/(r + 2) > b(1-a)/(2a+1), unstable if
/// either inequality is strictly reversed, Marginal within `tol` of equality.
Stability classify_stationary(double a, double beta, double r, double tol = 1e-9);

/// Every stationary point of the symmetric d=3 flow: the centre plus three
/// permutations per non-unit root (1, 4 or 7 points).
std::vector<StationaryPoint> enumerate_stationary_points(double a, double beta);

/// Stationary points of the two-type model: the centre, plus the asymmetric
/// pair when ((1-a)/(1+a)) beta > 1.
std::vector<StationaryPoint> two_type_stationary_points(double a, double beta);

enum class SymmetricPhaseLabel { SymmetricOnly, Coexistence, AsymmetricOnly, SupercriticalA };

std::string to_string(SymmetricPhaseLabel label);

struct SymmetricPhase {
    SymmetricPhaseLabel label = SymmetricPhaseLabel::SupercriticalA;
    std::optional<double> beta1;  // lower phase boundary, when a < 1
    std::optional<double> upper;  // (1+2a)/(1-a), when a < 1
    bool near_boundary = false;   // within 1e-9 of a boundary
};

/// Phase of the symmetric three-type model at (a, beta).
SymmetricPhase phase_symmetric(double a, double beta);

/// Stability of the centre for the cyclic model: stable if a >= 2, otherwise
/// stable iff beta < 2(1+a)/(2-a); Marginal within tol of the boundary.
Stability cyclic_center_stability(double a, double beta, double tol = 1e-9);

struct SearchOptions {
    int grid_resolution = 300;
    double residual_tol = 1e-10;    // |F| certification for returned points
    double candidate_floor = 1e-4;  // stalled candidates above this are grid noise
};

struct StationarySearchResult {
    std::vector<StationaryPoint> points;
    // Candidates with small residual that Newton could not certify to
    // residual_tol; reported rather than guessed at.
    std::vector<SimplexPoint> unrefined;
};

/// Grid scan of |F| over the interior of the 2-simplex plus damped-Newton
/// refinement. Works for any d=3 model; stability comes from the eigenvalues
/// of the reduced finite-difference Jacobian.
StationarySearchResult stationary_search(const ModelSpec& model, const SearchOptions& options = {});

/// stationary_search for the cyclic family.
StationarySearchResult cyclic_stationary_search(double a, double beta,
                                                const SearchOptions& options = {});

}  // namespace urnlab
