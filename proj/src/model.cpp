#include "urnlab/model.hpp"

#include <cmath>
#include <sstream>

namespace urnlab {

namespace {

int integer_exponent(double beta) {
    const double r = std::round(beta);
    if (r >= 1.0 && r <= 64.0 && beta == r) return static_cast<int>(r);
    return -1;
}

}  // namespace

void ModelSpec::validate() const {
    if (d < 2) throw std::invalid_argument("ModelSpec: need at least 2 colours");
    if (!(beta > 0.0)) throw std::invalid_argument("ModelSpec: beta must be > 0");
    if (A.rows() != d || A.cols() != d)
        throw std::invalid_argument("ModelSpec: A must be d x d");
    for (int i = 0; i < d; ++i) {
        bool row_positive = false;
        for (int j = 0; j < d; ++j) {
            const double v = A(i, j);
            if (!(v >= 0.0) || !std::isfinite(v)) {
                std::ostringstream msg;
                msg << "ModelSpec: A(" << i << "," << j << ") = " << v
                    << " is not a finite nonnegative weight";
                throw std::invalid_argument(msg.str());
            }
            if (v > 0.0) row_positive = true;
        }
        if (!row_positive) {
            std::ostringstream msg;
            msg << "ModelSpec: row " << i << " of A has no positive entry";
            throw std::invalid_argument(msg.str());
        }
    }
    if ((kind == ModelKind::Symmetric || kind == ModelKind::Cyclic) && !(a > 0.0))
        throw std::invalid_argument("ModelSpec: interaction strength a must be > 0");
    if (kind == ModelKind::Cyclic && d != 3)
        throw std::invalid_argument("ModelSpec: cyclic model is defined for d = 3");
}

ModelSpec symmetric_model(int d, double a, double beta) {
    ModelSpec m;
    m.kind = ModelKind::Symmetric;
    m.d = d;
    m.a = a;
    m.beta = beta;
    m.beta_int = integer_exponent(beta);
    m.A = Eigen::MatrixXd::Constant(d, d, a);
    m.A.diagonal().setOnes();
    m.validate();
    return m;
}

ModelSpec cyclic_model(double a, double beta) {
    ModelSpec m;
    m.kind = ModelKind::Cyclic;
    m.d = 3;
    m.a = a;
    m.beta = beta;
    m.beta_int = integer_exponent(beta);
    m.A = Eigen::MatrixXd::Identity(3, 3);
    m.A(0, 1) = a;
    m.A(1, 2) = a;
    m.A(2, 0) = a;
    m.validate();
    return m;
}

ModelSpec general_model(const Eigen::MatrixXd& A, double beta) {
    ModelSpec m;
    m.kind = ModelKind::General;
    m.d = static_cast<int>(A.rows());
    m.beta = beta;
    m.beta_int = integer_exponent(beta);
    m.A = A;
    m.validate();
    return m;
}

SimplexPoint::SimplexPoint(Eigen::VectorXd c, double tol) : coords(std::move(c)) {
    if (coords.size() < 2) throw std::invalid_argument("SimplexPoint: need dimension >= 2");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < coords.size(); ++i) {
        if (!(coords[i] >= 0.0))
            throw std::invalid_argument("SimplexPoint: negative coordinate");
        sum += coords[i];
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("SimplexPoint: coordinates do not sum to 1");
}

SimplexPoint simplex_center(int d) {
    return SimplexPoint(Eigen::VectorXd::Constant(d, 1.0 / d));
}

UrnState::UrnState(CountVector c, std::int64_t n0_, std::int64_t n_)
    : counts(std::move(c)), n0(n0_), n(n_) {
    validate();
}

void UrnState::validate() const {
    if (counts.size() < 2) throw std::invalid_argument("UrnState: need at least 2 colours");
    std::int64_t sum = 0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        if (counts[i] < 1)
            throw std::invalid_argument("UrnState: every colour needs at least one ball");
        sum += counts[i];
    }
    if (sum != n0 + n)
        throw std::invalid_argument("UrnState: counts do not sum to n0 + n");
    if (sum > kMaxExactTotal)
        throw std::overflow_error("UrnState: ball total exceeds exactly representable range");
}

UrnState initial_state(int d) {
    return initial_state(CountVector::Ones(d));
}

UrnState initial_state(CountVector counts) {
    const std::int64_t total = counts.sum();
    return UrnState(std::move(counts), total, 0);
}

SimplexPoint proportions(const UrnState& state) {
    return SimplexPoint(state.counts.cast<double>() / static_cast<double>(state.total()));
}

}  // namespace urnlab
