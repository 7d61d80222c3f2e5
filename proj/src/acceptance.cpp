#include "urnlab/acceptance.hpp"

#include "urnlab/model.hpp"
#include "urnlab/monte_carlo.hpp"
#include "urnlab/phase_diagram.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/roots.hpp"
#include "urnlab/stationary.hpp"
#include "urnlab/urn.hpp"
#include "urnlab/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace urnlab {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!detail.str().empty()) detail << "; ";
        detail << what << (ok ? " ok" : " FAILED");
        pass = pass && ok;
    }
};

Eigen::VectorXd random_interior_point(int d, Rng& rng, double min_coord) {
    for (;;) {
        Eigen::VectorXd x(d);
        for (int i = 0; i < d; ++i) x[i] = -std::log(1.0 - rng.uniform());
        x /= x.sum();
        if (x.minCoeff() >= min_coord) return x;
    }
}

// ---------------------------------------------------------------------------
// A1: explicit roots and stable points of the beta = 2 symmetric model.
// ---------------------------------------------------------------------------
CriterionResult criterion_a1() {
    Check check;
    const auto closed_form_pair = [](double a) {
        const double disc = std::sqrt(1.0 - 2.0 * a - 7.0 * a * a);
        return std::pair<double, double>{(1.0 - a - disc) / (2.0 * a),
                                         (1.0 - a + disc) / (2.0 * a)};
    };

    for (const double a : {0.2, 0.26}) {
        const auto [r_lo, r_hi] = closed_form_pair(a);
        const auto roots = find_positive_roots({a, 2.0, PolyVariant::ThreeTypeSymmetric});
        check.require(roots.size() == 3, "a=" + fmt(a) + " three roots");
        if (roots.size() == 3) {
            const double e0 = std::abs(roots[0].z - std::min(1.0, r_lo));
            const double e1 = std::abs(roots[1].z - std::clamp(1.0, std::min(r_lo, r_hi),
                                                               std::max(r_lo, r_hi)));
            const double e2 = std::abs(roots[2].z - std::max(1.0, r_hi));
            const double err = std::max({e0, e1, e2});
            check.require(err < 1e-6, "a=" + fmt(a) + " root error " + fmt(err) + " < 1e-6");
        }
    }

    const auto stable_asymmetric = [&check](double a, const Eigen::Vector3d& target,
                                            const char* tag) {
        const auto points = enumerate_stationary_points(a, 2.0);
        double best = 1e9;
        for (const StationaryPoint& p : points) {
            if (!p.axis || p.stability != Stability::LinearlyStable) continue;
            if (*p.axis != 2) continue;
            best = std::min(best, (p.location.coords - Eigen::VectorXd(target)).lpNorm<Eigen::Infinity>());
        }
        check.require(best < 5e-5, std::string(tag) + " point error " + fmt(best) + " < 5e-5");
    };
    stable_asymmetric(0.2, {0.1847, 0.1847, 0.6306}, "a=0.2");
    stable_asymmetric(0.26, {0.2792, 0.2792, 0.4416}, "a=0.26");

    return {"A1", "beta=2 closed-form roots and stable points", check.pass, check.detail.str()};
}

// ---------------------------------------------------------------------------
// A2: phase anchors for beta1 and the centre-stability flip.
// ---------------------------------------------------------------------------
CriterionResult criterion_a2() {
    Check check;

    const double a_star = (std::sqrt(8.0) - 1.0) / 7.0;
    const double b1 = beta1(a_star);
    check.require(std::abs(b1 - 2.0) < 1e-4,
                  "beta1((sqrt8-1)/7)=" + fmt(b1) + " within 1e-4 of 2");

    const double b1c = beta1(0.4160306);
    check.require(std::abs(b1c - 3.0) < 1e-2, "beta1(0.4160306)=" + fmt(b1c) + " within 1e-2 of 3");

    // Centre-stability flip along a at beta = 2.
    const auto center_stable = [](double a) {
        return classify_stationary(a, 2.0, 1.0) == Stability::LinearlyStable;
    };
    double lo = 0.2, hi = 0.3;
    check.require(!center_stable(lo) && center_stable(hi), "flip bracketed in (0.2, 0.3)");
    for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (center_stable(mid) ? hi : lo) = mid;
    }
    const double flip = 0.5 * (lo + hi);
    check.require(std::abs(flip - 0.25) < 1e-9, "flip at a=" + fmt(flip) + " within 1e-9 of 1/4");

    return {"A2", "phase anchors beta1 and the centre flip", check.pass, check.detail.str()};
}

// ---------------------------------------------------------------------------
// A3: beta = 3 cubic factor cross-check.
// ---------------------------------------------------------------------------
CriterionResult criterion_a3() {
    Check check;
    const int expected_counts[] = {3, 3, 1};
    const double a_values[] = {0.35, 0.41, 0.45};
    for (int k = 0; k < 3; ++k) {
        const double a = a_values[k];
        // Positive real roots of a z^3 + (a-1) z^2 + (a-1) z + 2a via the
        // companion matrix.
        Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
        companion(1, 0) = 1.0;
        companion(2, 1) = 1.0;
        companion(0, 2) = -2.0 * a / a;
        companion(1, 2) = -(a - 1.0) / a;
        companion(2, 2) = -(a - 1.0) / a;
        const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion);
        std::vector<double> cubic_roots;
        for (int i = 0; i < 3; ++i) {
            const std::complex<double> z = solver.eigenvalues()[i];
            if (std::abs(z.imag()) < 1e-9 && z.real() > 0.0) cubic_roots.push_back(z.real());
        }
        cubic_roots.push_back(1.0);
        std::sort(cubic_roots.begin(), cubic_roots.end());

        const auto roots = find_positive_roots({a, 3.0, PolyVariant::ThreeTypeSymmetric});
        int count = 0;
        for (const Root& r : roots) count += r.multiplicity;
        check.require(count == expected_counts[k],
                      "a=" + fmt(a) + " count " + std::to_string(count) + " == " +
                          std::to_string(expected_counts[k]));
        check.require(roots.size() == cubic_roots.size(), "a=" + fmt(a) + " root lists align");
        if (roots.size() == cubic_roots.size()) {
            double err = 0.0;
            for (std::size_t i = 0; i < roots.size(); ++i)
                err = std::max(err, std::abs(roots[i].z - cubic_roots[i]));
            check.require(err < 1e-8, "a=" + fmt(a) + " cubic agreement " + fmt(err) + " < 1e-8");
        }
    }
    return {"A3", "beta=3 cubic factor cross-check", check.pass, check.detail.str()};
}

// ---------------------------------------------------------------------------
// A4: cyclic centre Jacobian, eigenvalues, and stability boundary.
// ---------------------------------------------------------------------------
CriterionResult criterion_a4() {
    Check check;
    const Eigen::Vector3d center = Eigen::Vector3d::Constant(1.0 / 3.0);

    for (const double beta : {2.0, 4.0, 6.0}) {
        const auto field = [beta](const Eigen::Vector3d& x) { return drift_cyclic(1.0, beta, x); };
        const Eigen::Matrix2d jac = jacobian_reduced(field, center);
        const double jac_err = (jac - cyclic_center_jacobian(beta)).lpNorm<Eigen::Infinity>();
        check.require(jac_err < 1e-4, "beta=" + fmt(beta) + " Jacobian error " + fmt(jac_err));

        const auto eigs = eigenvalues_2x2(jac);
        const std::complex<double> expected(beta / 4.0 - 1.0, std::sqrt(3.0) * beta / 4.0);
        const double eig_err = std::min(std::abs(eigs[0] - expected), std::abs(eigs[1] - expected));
        check.require(eig_err < 1e-6, "beta=" + fmt(beta) + " eigenvalue error " + fmt(eig_err));
    }

    check.require(cyclic_center_stability(1.0, 4.0) == Stability::Marginal &&
                      cyclic_center_stability(1.0, 4.0 - 1e-8) == Stability::LinearlyStable &&
                      cyclic_center_stability(1.0, 4.0 + 1e-8) == Stability::LinearlyUnstable,
                  "a=1 boundary exactly at beta=4");

    for (const double a : {0.5, 1.0, 1.9}) {
        const double threshold = 2.0 * (1.0 + a) / (2.0 - a);
        const auto max_real = [&](double beta) {
            const auto field = [a, beta](const Eigen::Vector3d& x) {
                return drift_cyclic(a, beta, x);
            };
            const auto eigs = eigenvalues_2x2(jacobian_reduced(field, center));
            return std::max(eigs[0].real(), eigs[1].real());
        };
        double lo = threshold - 0.5, hi = threshold + 0.5;
        if (max_real(lo) >= 0.0 || max_real(hi) <= 0.0) {
            check.require(false, "a=" + fmt(a) + " eigenvalue sign bracket");
            continue;
        }
        for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            (max_real(mid) < 0.0 ? lo : hi) = mid;
        }
        const double found = 0.5 * (lo + hi);
        check.require(std::abs(found - threshold) < 1e-6,
                      "a=" + fmt(a) + " boundary " + fmt(found) + " vs " + fmt(threshold));
    }

    return {"A4", "cyclic centre eigenvalues and stability boundary", check.pass,
            check.detail.str()};
}

// ---------------------------------------------------------------------------
// A5: Lyapunov gradient identity x_i dL/dx_i = F_i.
// ---------------------------------------------------------------------------
CriterionResult criterion_a5() {
    Check check;
    const double h = 1e-6;
    Rng rng(20250810);
    for (const int d : {3, 4, 5}) {
        double worst = 0.0;
        for (const double a : {0.2, 0.5, 2.0}) {
            for (const double beta : {0.5, 2.0, 5.0}) {
                for (int trial = 0; trial < 100; ++trial) {
                    const Eigen::VectorXd x = random_interior_point(d, rng, 0.05);
                    const Eigen::VectorXd f = drift_symmetric(a, beta, x);
                    for (int i = 0; i < d; ++i) {
                        Eigen::VectorXd xp = x, xm = x;
                        xp[i] += h;
                        xm[i] -= h;
                        const double grad =
                            (lyapunov(a, beta, xp) - lyapunov(a, beta, xm)) / (2.0 * h);
                        worst = std::max(worst, std::abs(x[i] * grad - f[i]));
                    }
                }
            }
        }
        check.require(worst < 1e-8, "d=" + std::to_string(d) + " worst residual " + fmt(worst));
    }
    return {"A5", "Lyapunov gradient identity (d=3,4,5)", check.pass, check.detail.str()};
}

bool is_center_point(const StationaryPoint& p) {
    return p.r.has_value() && *p.r == 1.0 && !p.axis.has_value();
}

// ---------------------------------------------------------------------------
// A6: symmetric-model ensembles reproduce the three phases.
// ---------------------------------------------------------------------------
CriterionResult criterion_a6(const AcceptanceOptions& options,
                             std::vector<EnsembleSummary>& keep_for_a8) {
    Check check;
    EnsembleOptions opts;
    opts.threads = options.threads;

    const auto hit_split = [](const EnsembleSummary& s) {
        int center = 0, asym = 0;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (is_center_point(s.points[i]))
                center += s.hits[i];
            else
                asym += s.hits[i];
        }
        return std::pair<int, int>{center, asym};
    };

    {
        const auto summary =
            run_ensemble(symmetric_model(3, 0.2, 2.0), 20, 100000, options.seed, opts);
        const auto [center, asym] = hit_split(summary);
        check.require(asym >= 18, "a=0.2 asymmetric hits " + std::to_string(asym) + " >= 18");
        check.require(center == 0, "a=0.2 centre hits " + std::to_string(center) + " == 0");
        keep_for_a8.push_back(summary);
    }
    {
        const auto summary =
            run_ensemble(symmetric_model(3, 0.5, 2.0), 20, 100000, options.seed, opts);
        const auto [center, asym] = hit_split(summary);
        check.require(center >= 19, "a=0.5 centre hits " + std::to_string(center) + " >= 19");
        keep_for_a8.push_back(summary);
    }
    {
        const auto summary =
            run_ensemble(symmetric_model(3, 0.26, 2.0), 100, 100000, options.seed, opts);
        const auto [center, asym] = hit_split(summary);
        check.require(center >= 1, "a=0.26 centre hits " + std::to_string(center) + " >= 1");
        check.require(asym >= 1, "a=0.26 asymmetric hits " + std::to_string(asym) + " >= 1");
        keep_for_a8.push_back(summary);
    }
    return {"A6", "symmetric ensembles across the three phases", check.pass, check.detail.str()};
}

// ---------------------------------------------------------------------------
// A7: cyclic ensembles: convergence below the boundary, cycling above.
// ---------------------------------------------------------------------------
CriterionResult criterion_a7(const AcceptanceOptions& options) {
    Check check;
    EnsembleOptions opts;
    opts.threads = options.threads;

    {
        const auto summary =
            run_ensemble(cyclic_model(1.0, 3.0), 20, 1000000, options.seed, opts);
        int center = 0;
        for (std::size_t i = 0; i < summary.points.size(); ++i)
            if (is_center_point(summary.points[i])) center += summary.hits[i];
        check.require(center >= 12, "beta=3 centre hits " + std::to_string(center) + " >= 12");
    }
    {
        const auto summary =
            run_ensemble(cyclic_model(1.0, 6.0), 20, 1000000, options.seed, opts);
        int center = 0;
        for (std::size_t i = 0; i < summary.points.size(); ++i)
            if (is_center_point(summary.points[i])) center += summary.hits[i];
        check.require(summary.cycling >= 18,
                      "beta=6 cycling verdicts " + std::to_string(summary.cycling) + " >= 18");
        check.require(center == 0, "beta=6 centre hits " + std::to_string(center) + " == 0");
    }
    return {"A7", "cyclic ensembles: point limits vs cycling", check.pass, check.detail.str()};
}

// ---------------------------------------------------------------------------
// A8: no convergence to linearly unstable points; noise positivity there.
// ---------------------------------------------------------------------------
CriterionResult criterion_a8(const std::vector<EnsembleSummary>& a6_runs) {
    Check check;

    int unstable_hits = 0;
    for (const EnsembleSummary& summary : a6_runs)
        for (const LimitClassification& v : summary.verdicts)
            if (v.verdict == Verdict::PointLimit &&
                summary.points[static_cast<std::size_t>(*v.point_index)].stability ==
                    Stability::LinearlyUnstable)
                ++unstable_hits;
    check.require(unstable_hits == 0,
                  "point limits at unstable points " + std::to_string(unstable_hits) + " == 0");

    double minimum = std::numeric_limits<double>::infinity();
    int unstable_points = 0;
    for (const double a : {0.2, 0.26, 0.5}) {
        const ModelSpec model = symmetric_model(3, a, 2.0);
        for (const StationaryPoint& p : enumerate_stationary_points(a, 2.0)) {
            if (p.stability != Stability::LinearlyUnstable) continue;
            ++unstable_points;
            minimum = std::min(minimum, noise_positivity_check(model, p.location, 360));
        }
    }
    check.require(unstable_points > 0 && minimum > 1e-3,
                  "noise positivity minimum " + fmt(minimum) + " over " +
                      std::to_string(unstable_points) + " unstable points > 1e-3");

    return {"A8", "unstable points are never limits; noise positivity", check.pass,
            check.detail.str()};
}

// ---------------------------------------------------------------------------
// A9: general cyclic extra-stable-point phase ends between a=0.24 and a=0.26.
// ---------------------------------------------------------------------------
CriterionResult criterion_a9() {
    Check check;
    SearchOptions opts;
    opts.grid_resolution = 400;

    const auto extra_stable = [&](double a) {
        const auto result = cyclic_stationary_search(a, 2.0, opts);
        int extra = 0;
        for (const StationaryPoint& p : result.points) {
            const bool center =
                (p.location.coords - Eigen::VectorXd::Constant(3, 1.0 / 3.0)).norm() < 1e-6;
            if (!center && p.stability == Stability::LinearlyStable) ++extra;
        }
        return extra;
    };

    const int at_024 = extra_stable(0.24);
    const int at_026 = extra_stable(0.26);
    check.require(at_024 > 0, "a=0.24 stable non-centre points " + std::to_string(at_024) + " > 0");
    check.require(at_026 == 0,
                  "a=0.26 stable non-centre points " + std::to_string(at_026) + " == 0");
    return {"A9", "general cyclic boundary bracketed at beta=2", check.pass, check.detail.str()};
}

// ---------------------------------------------------------------------------
// A10: two-type root existence criterion on a 20x20 grid.
// ---------------------------------------------------------------------------
CriterionResult criterion_a10() {
    Check check;
    int present = 0, absent = 0;
    bool iff_ok = true;
    double worst_residual = 0.0;
    for (int i = 0; i < 20 && iff_ok; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double a = 0.033 + 0.047 * i;
            const double beta = 0.21 + 0.26 * j;
            const bool expected = (1.0 - a) / (1.0 + a) * beta > 1.0;
            const auto root = two_type_root(a, beta);
            if (root.has_value() != expected) {
                iff_ok = false;
                check.require(false, "iff failed at a=" + fmt(a) + " beta=" + fmt(beta));
                break;
            }
            if (root) {
                ++present;
                const double residual =
                    std::abs(poly_eval({a, beta, PolyVariant::TwoTypeSymmetric}, *root).value);
                worst_residual = std::max(worst_residual, residual);
                if (!(*root > 0.0 && *root < 1.0)) {
                    iff_ok = false;
                    check.require(false, "root outside (0,1) at a=" + fmt(a));
                    break;
                }
            } else {
                ++absent;
            }
        }
    }
    if (iff_ok)
        check.require(true, "criterion matched on all 400 cells (" + std::to_string(present) +
                                " roots, " + std::to_string(absent) + " none)");
    check.require(worst_residual < 1e-10, "worst residual " + fmt(worst_residual) + " < 1e-10");
    return {"A10", "two-type root existence criterion", check.pass, check.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> results;
    results.push_back(criterion_a1());
    results.push_back(criterion_a2());
    results.push_back(criterion_a3());
    results.push_back(criterion_a4());
    results.push_back(criterion_a5());
    if (!options.quick) {
        std::vector<EnsembleSummary> a6_runs;
        results.push_back(criterion_a6(options, a6_runs));
        results.push_back(criterion_a7(options));
        results.push_back(criterion_a8(a6_runs));
    }
    results.push_back(criterion_a9());
    results.push_back(criterion_a10());
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.pass; });
}

std::string acceptance_report(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    int passed = 0;
    for (const CriterionResult& r : results) {
        out << r.id << (r.pass ? " PASS " : " FAIL ") << r.title;
        if (!r.detail.empty()) out << " [" << r.detail << "]";
        out << "\n";
        if (r.pass) ++passed;
    }
    out << passed << "/" << results.size() << " criteria passed\n";
    return out.str();
}

}  // namespace urnlab
