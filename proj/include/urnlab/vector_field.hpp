#pragma once

#include "urnlab/model.hpp"
#include "urnlab/urn.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>

namespace urnlab {

/// Mean-field drift of the proportion process: F(x) = p(x) - x where p are
/// the selection probabilities at proportions x. Components sum to 0.
/// For beta < 1 the point must be interior (all coordinates positive).
Eigen::VectorXd drift(const ModelSpec& model, const Eigen::VectorXd& x);

/// Closed-form drift for the equal-off-diagonal family (any d >= 2):
/// F_i = (x_i^b + a*(S - x_i^b)) / ((1 + (d-1)a) * S) - x_i with S = sum x_j^b.
Eigen::VectorXd drift_symmetric(double a, double beta, const Eigen::VectorXd& x);

/// Closed-form drift for the three-colour cyclic family:
/// F_i = (x_i^b + a*x_{i+1}^b) / ((1+a) * S) - x_i (indices mod 3).
Eigen::Vector3d drift_cyclic(double a, double beta, const Eigen::Vector3d& x);

/// Chart on the 2-simplex: keep (x1, x2), reconstruct x3 = 1 - x1 - x2.
inline Eigen::Vector2d chart(const Eigen::Vector3d& x) { return {x[0], x[1]}; }
inline Eigen::Vector3d unchart(const Eigen::Vector2d& y) {
    return {y[0], y[1], 1.0 - y[0] - y[1]};
}

/// Central finite-difference Jacobian of a field on the simplex, taken in
/// chart coordinates. The point must keep every coordinate at distance >= h
/// from the boundary so the stencil stays inside the simplex.
template <typename Field>
Eigen::Matrix2d jacobian_reduced(Field&& field, const Eigen::Vector3d& x, double h = 1e-6) {
    if (!(h >= 1e-7 && h <= 1e-4))
        throw std::invalid_argument("jacobian_reduced: h must lie in [1e-7, 1e-4]");
    if (x.minCoeff() < h)
        throw std::domain_error("jacobian_reduced: point too near the simplex boundary for step h");
    const Eigen::Vector2d y = chart(x);
    Eigen::Matrix2d jac;
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d yp = y, ym = y;
        yp[k] += h;
        ym[k] -= h;
        const Eigen::Vector3d fp = field(unchart(yp));
        const Eigen::Vector3d fm = field(unchart(ym));
        jac(0, k) = (fp[0] - fm[0]) / (2.0 * h);
        jac(1, k) = (fp[1] - fm[1]) / (2.0 * h);
    }
    return jac;
}

/// Exact closed form of the reduced Jacobian at the centre for the a = 1
/// cyclic model: [[b/2 - 1, b/2], [-b/2, -1]].
Eigen::Matrix2d cyclic_center_jacobian(double beta);

/// Quadratic-formula eigenvalues of a real 2x2 matrix; a conjugate pair when
/// the discriminant is negative. Ordered by descending real part, then
/// descending imaginary part.
std::array<std::complex<double>, 2> eigenvalues_2x2(const Eigen::Matrix2d& m);

/// Lyapunov function for the symmetric family (strictly increasing along the
/// flow off stationary points):
///   L(x) = -sum x_i + (a*sum log x_i - ((a-1)/beta) * log sum x_i^beta) / ((d-1)a + 1).
/// Satisfies x_i * dL/dx_i = F_i. Requires a strictly interior point.
double lyapunov(double a, double beta, const Eigen::VectorXd& x);

}  // namespace urnlab
