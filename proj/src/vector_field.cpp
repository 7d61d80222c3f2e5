#include "urnlab/vector_field.hpp"

#include <cmath>

namespace urnlab {

namespace {

void require_interior_for_fractional_power(double beta, const Eigen::VectorXd& x) {
    if (beta < 1.0 && x.minCoeff() <= 0.0)
        throw std::domain_error("drift: boundary point with beta < 1");
}

}  // namespace

Eigen::VectorXd drift(const ModelSpec& model, const Eigen::VectorXd& x) {
    require_interior_for_fractional_power(model.beta, x);
    return selection_probabilities(model, x) - x;
}

Eigen::VectorXd drift_symmetric(double a, double beta, const Eigen::VectorXd& x) {
    require_interior_for_fractional_power(beta, x);
    const int d = static_cast<int>(x.size());
    const Eigen::VectorXd powers = x.array().pow(beta);
    const double s = powers.sum();
    const double denom = (1.0 + (d - 1) * a) * s;
    Eigen::VectorXd f(d);
    for (int i = 0; i < d; ++i) f[i] = (powers[i] + a * (s - powers[i])) / denom - x[i];
    return f;
}

Eigen::Vector3d drift_cyclic(double a, double beta, const Eigen::Vector3d& x) {
    require_interior_for_fractional_power(beta, x);
    const Eigen::Vector3d powers = x.array().pow(beta);
    const double denom = (1.0 + a) * powers.sum();
    Eigen::Vector3d f;
    for (int i = 0; i < 3; ++i) f[i] = (powers[i] + a * powers[(i + 1) % 3]) / denom - x[i];
    return f;
}

Eigen::Matrix2d cyclic_center_jacobian(double beta) {
    Eigen::Matrix2d jac;
    jac << beta / 2.0 - 1.0, beta / 2.0, -beta / 2.0, -1.0;
    return jac;
}

std::array<std::complex<double>, 2> eigenvalues_2x2(const Eigen::Matrix2d& m) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return {std::complex<double>((tr + root) / 2.0, 0.0),
                std::complex<double>((tr - root) / 2.0, 0.0)};
    }
    const double imag = std::sqrt(-disc) / 2.0;
    return {std::complex<double>(tr / 2.0, imag), std::complex<double>(tr / 2.0, -imag)};
}

double lyapunov(double a, double beta, const Eigen::VectorXd& x) {
    if (x.minCoeff() <= 0.0)
        throw std::domain_error("lyapunov: boundary point (log divergence)");
    const int d = static_cast<int>(x.size());
    const double log_sum = std::log(x.array().pow(beta).sum());
    const double log_prod = x.array().log().sum();
    return -x.sum() + (a * log_prod - (a - 1.0) / beta * log_sum) / ((d - 1) * a + 1.0);
}

}  // namespace urnlab
