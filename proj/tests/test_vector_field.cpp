#include "urnlab/vector_field.hpp"

#include "urnlab/rng.hpp"
#include "urnlab/roots.hpp"

#include <doctest.h>

#include <cmath>

using namespace urnlab;

namespace {

Eigen::Vector3d random_interior3(Rng& rng, double min_coord = 0.05) {
    for (;;) {
        Eigen::Vector3d x;
        for (int i = 0; i < 3; ++i) x[i] = -std::log(1.0 - rng.uniform());
        x /= x.sum();
        if (x.minCoeff() >= min_coord) return x;
    }
}

const Eigen::Vector3d kCenter = Eigen::Vector3d::Constant(1.0 / 3.0);

}  // namespace

TEST_SUITE("vector_field") {

TEST_CASE("centre is a stationary point of every family") {
    for (const double a : {0.2, 0.26, 1.0, 2.0}) {
        for (const double beta : {0.5, 2.0, 6.0}) {
            CHECK(drift_symmetric(a, beta, kCenter).lpNorm<Eigen::Infinity>() < 1e-15);
            CHECK(drift_cyclic(a, beta, kCenter).lpNorm<Eigen::Infinity>() < 1e-15);
        }
    }
    CHECK(drift_cyclic(0.5, 2.0, kCenter).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("paper stationary point at a=0.2, beta=2") {
    const Eigen::Vector3d x(0.1847, 0.1847, 0.6306);
    CHECK(drift_symmetric(0.2, 2.0, x).lpNorm<Eigen::Infinity>() < 5e-4);
    CHECK(drift(symmetric_model(3, 0.2, 2.0), x).lpNorm<Eigen::Infinity>() < 5e-4);
}

TEST_CASE("closed forms agree with the general drift") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector3d x = random_interior3(rng, 0.01);
        for (const double a : {0.2, 0.7, 1.3}) {
            for (const double beta : {0.5, 2.0, 4.5}) {
                const Eigen::VectorXd general_sym = drift(symmetric_model(3, a, beta), x);
                const Eigen::VectorXd closed_sym = drift_symmetric(a, beta, x);
                CHECK((general_sym - closed_sym).lpNorm<Eigen::Infinity>() < 1e-14);

                const Eigen::VectorXd general_cyc = drift(cyclic_model(a, beta), x);
                const Eigen::Vector3d closed_cyc = drift_cyclic(a, beta, x);
                CHECK((general_cyc - closed_cyc).lpNorm<Eigen::Infinity>() < 1e-14);
            }
        }
        // a = 1 cyclic equals the general 0/1 matrix.
        Eigen::MatrixXd zero_one(3, 3);
        zero_one << 1, 1, 0, 0, 1, 1, 1, 0, 1;
        const Eigen::VectorXd via_matrix = drift(general_model(zero_one, 3.0), x);
        CHECK((via_matrix - Eigen::VectorXd(drift_cyclic(1.0, 3.0, x)))
                  .lpNorm<Eigen::Infinity>() < 1e-14);
    }
}

TEST_CASE("drift components sum to zero") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Vector3d x = random_interior3(rng, 1e-4);
        CHECK(std::abs(drift_symmetric(0.37, 3.3, x).sum()) < 1e-12);
        CHECK(std::abs(drift_cyclic(0.8, 5.1, x).sum()) < 1e-12);
    }
}

TEST_CASE("the diagonals x_i = x_j are invariant: equal drift components") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const double s = 0.02 + 0.45 * rng.uniform();
        const Eigen::Vector3d x(s, s, 1.0 - 2.0 * s);
        const Eigen::Vector3d f = drift_symmetric(0.26, 3.1, x);
        CHECK(f[0] == f[1]);
        const Eigen::VectorXd g = drift(symmetric_model(3, 0.26, 3.1), x);
        CHECK(g[0] == g[1]);
    }
}

TEST_CASE("boundary handling") {
    const Eigen::Vector3d edge(0.0, 0.5, 0.5);
    CHECK_THROWS_AS(drift_symmetric(0.5, 0.5, edge), std::domain_error);
    CHECK_THROWS_AS(drift(symmetric_model(3, 0.5, 0.7), edge), std::domain_error);
    // beta >= 1 is defined on the boundary.
    const Eigen::Vector3d f = drift_symmetric(0.5, 2.0, edge);
    CHECK(std::isfinite(f[0]));
    CHECK_THROWS_AS(lyapunov(0.5, 2.0, edge), std::domain_error);
}

TEST_CASE("reduced Jacobian matches the cyclic closed form") {
    for (const double beta : {2.0, 4.0, 6.0}) {
        const auto field = [beta](const Eigen::Vector3d& x) { return drift_cyclic(1.0, beta, x); };
        const Eigen::Matrix2d jac = jacobian_reduced(field, kCenter);
        CHECK((jac - cyclic_center_jacobian(beta)).lpNorm<Eigen::Infinity>() < 1e-4);
    }
    // beta = 4: [[1, 2], [-2, -1]] with eigenvalues +/- i sqrt(3).
    const auto eigs = eigenvalues_2x2(cyclic_center_jacobian(4.0));
    CHECK(eigs[0].real() == 0.0);
    CHECK(eigs[0].imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(eigs[1] == std::conj(eigs[0]));
}

TEST_CASE("marginal symmetric centre at a=1/4, beta=2") {
    const auto field = [](const Eigen::Vector3d& x) {
        return Eigen::Vector3d(drift_symmetric(0.25, 2.0, x));
    };
    const auto eigs = eigenvalues_2x2(jacobian_reduced(field, kCenter));
    CHECK(std::abs(eigs[0].real()) < 1e-6);
    CHECK(std::abs(eigs[1].real()) < 1e-6);
}

TEST_CASE("beta=1 identity matrix: flow vanishes identically") {
    const ModelSpec model = general_model(Eigen::MatrixXd::Identity(3, 3), 1.0);
    const auto field = [&](const Eigen::Vector3d& x) {
        return Eigen::Vector3d(drift(model, x));
    };
    Rng rng(3);
    const Eigen::Vector3d x = random_interior3(rng);
    CHECK(field(x).lpNorm<Eigen::Infinity>() < 1e-15);
    const Eigen::Matrix2d jac = jacobian_reduced(field, x);
    CHECK(jac.lpNorm<Eigen::Infinity>() < 1e-9);
    const auto eigs = eigenvalues_2x2(jac);
    CHECK(std::abs(eigs[0]) < 1e-9);
    CHECK(std::abs(eigs[1]) < 1e-9);
}

TEST_CASE("jacobian_reduced guards its chart") {
    const auto field = [](const Eigen::Vector3d& x) { return drift_cyclic(1.0, 2.0, x); };
    CHECK_THROWS_AS(jacobian_reduced(field, Eigen::Vector3d(0.4999995, 0.4999995, 1e-6)),
                    std::domain_error);
    CHECK_THROWS_AS(jacobian_reduced(field, kCenter, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(jacobian_reduced(field, kCenter, 1e-8), std::invalid_argument);
}

TEST_CASE("eigenvalues_2x2 basics") {
    Eigen::Matrix2d rotation;
    rotation << 1.0, 2.0, -2.0, -1.0;
    const auto pair = eigenvalues_2x2(rotation);
    CHECK(pair[0] == std::complex<double>(0.0, std::sqrt(3.0)));
    CHECK(pair[1] == std::complex<double>(0.0, -std::sqrt(3.0)));

    const auto度 = eigenvalues_2x2(Eigen::Matrix2d::Identity());
    CHECK(度[0] == std::complex<double>(1.0, 0.0));
    CHECK(度[1] == std::complex<double>(1.0, 0.0));

    // Lemma formula at beta = 6: (beta/4 - 1) +/- i sqrt(3) beta / 4.
    const auto six = eigenvalues_2x2(cyclic_center_jacobian(6.0));
    CHECK(six[0].real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(six[0].imag() == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("lyapunov gradient identity and shape") {
    // Gradient vanishes at the centre.
    const double h = 1e-6;
    for (const double a : {0.2, 0.7, 2.0}) {
        for (const double beta : {0.5, 2.0, 5.0}) {
            for (int i = 0; i < 3; ++i) {
                Eigen::VectorXd xp = kCenter, xm = kCenter;
                xp[i] += h;
                xm[i] -= h;
                const double grad = (lyapunov(a, beta, xp) - lyapunov(a, beta, xm)) / (2.0 * h);
                CHECK(std::abs(grad) < 1e-8);
            }
        }
    }

    // x_i dL/dx_i = F_i at random interior points.
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Vector3d x = random_interior3(rng);
        for (const double a : {0.2, 0.5, 2.0}) {
            for (const double beta : {0.5, 2.0, 5.0}) {
                const Eigen::VectorXd f = drift_symmetric(a, beta, x);
                for (int i = 0; i < 3; ++i) {
                    Eigen::VectorXd xp = x, xm = x;
                    xp[i] += h;
                    xm[i] -= h;
                    const double grad =
                        (lyapunov(a, beta, Eigen::VectorXd(xp)) -
                         lyapunov(a, beta, Eigen::VectorXd(xm))) / (2.0 * h);
                    CHECK(std::abs(x[i] * grad - f[i]) < 1e-8);
                }
            }
        }
    }

    // The stable asymmetric point beats the centre in the asymmetric phase.
    CHECK(lyapunov(0.2, 2.0, Eigen::Vector3d(0.1847, 0.1847, 0.6306)) >
          lyapunov(0.2, 2.0, Eigen::Vector3d(kCenter)));
}

TEST_CASE("lyapunov increases along forward-Euler flow") {
    Rng rng(43);
    const double h = 1e-3;
    for (const double a : {0.2, 0.26, 0.9}) {
        for (const double beta : {2.0, 5.0}) {
            for (int start = 0; start < 10; ++start) {
                Eigen::VectorXd x = random_interior3(rng);
                double previous = lyapunov(a, beta, x);
                for (int stepk = 0; stepk < 200; ++stepk) {
                    x += h * drift_symmetric(a, beta, x);
                    const double current = lyapunov(a, beta, x);
                    CHECK(current >= previous - 1e-12);
                    previous = current;
                }
            }
        }
    }
}

TEST_CASE("restriction to the diagonal matches the polynomial") {
    // F3((1-s)/2, (1-s)/2, s) = -2 P(z) / ((1+2a)(2 + z^b)), z = 2s/(1-s).
    for (const double a : {0.2, 0.26, 0.5, 2.0}) {
        for (const double beta : {2.0, 3.7, 5.0}) {
            for (double s = 0.05; s < 0.95; s += 0.05) {
                const Eigen::Vector3d x((1.0 - s) / 2.0, (1.0 - s) / 2.0, s);
                const double z = 2.0 * s / (1.0 - s);
                const double expected =
                    -2.0 * poly_eval({a, beta, PolyVariant::ThreeTypeSymmetric}, z).value /
                    ((1.0 + 2.0 * a) * (2.0 + std::pow(z, beta)));
                CHECK(std::abs(drift_symmetric(a, beta, x)[2] - expected) < 1e-10);
            }
        }
    }
}

TEST_CASE("transverse perturbation coefficient at stationary points") {
    // (F1(x+e, x-e, rx) - F1(x, x, rx))/e -> -1 + b(1-a)(r+2)/((2a+1)(2+r^b)).
    const double eps = 1e-6;
    for (const double a : {0.2, 0.26}) {
        for (const Root& root : find_positive_roots({a, 2.0, PolyVariant::ThreeTypeSymmetric})) {
            const double r = root.z;
            const double x = 1.0 / (r + 2.0);
            const Eigen::Vector3d base(x, x, r * x);
            const Eigen::Vector3d shifted(x + eps, x - eps, r * x);
            const double slope =
                (drift_symmetric(a, 2.0, shifted)[0] - drift_symmetric(a, 2.0, base)[0]) / eps;
            const double expected =
                -1.0 + 2.0 * (1.0 - a) * (r + 2.0) / ((2.0 * a + 1.0) * (2.0 + r * r));
            CHECK(std::abs(slope - expected) < 1e-5);
        }
    }
}

}  // TEST_SUITE
