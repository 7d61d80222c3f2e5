#include "urnlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace urnlab {

namespace {

constexpr double kRootResidualTol = 1e-10;
constexpr double kDoubleRootTol = 1e-9;
constexpr double kUnitSnapTol = 1e-9;

double constant_term(const PolyParams& p) {
    return p.variant == PolyVariant::ThreeTypeSymmetric ? -2.0 * p.a : -p.a;
}

double poly_value(const PolyParams& p, double z) {
    const double zb = std::pow(z, p.beta);
    const double linear = p.variant == PolyVariant::ThreeTypeSymmetric ? (1.0 + p.a) * z : z;
    return p.a * zb * z - zb + linear + constant_term(p);
}

double poly_derivative(const PolyParams& p, double z) {
    const double zb = std::pow(z, p.beta);
    const double zbm1 = std::pow(z, p.beta - 1.0);
    const double linear = p.variant == PolyVariant::ThreeTypeSymmetric ? 1.0 + p.a : 1.0;
    return p.a * (p.beta + 1.0) * zb - p.beta * zbm1 + linear;
}

[[noreturn]] void certification_failure(const PolyParams& p, const char* what) {
    std::ostringstream msg;
    msg << "find_positive_roots: failed to certify " << what << " (a=" << p.a
        << ", beta=" << p.beta << ")";
    throw std::runtime_error(msg.str());
}

// Bisect f on [lo, hi] with f(lo) < 0 < f(hi) (or the reverse), then polish
// with two guarded Newton steps.
template <typename F, typename DF>
double bisect(F&& f, DF&& df, double lo, double hi) {
    double flo = f(lo);
    const bool rising = flo <= 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm <= 0.0) == rising)
            lo = mid;
        else
            hi = mid;
    }
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        const double d = df(z);
        if (d == 0.0) break;
        const double next = z - f(z) / d;
        if (next > lo && next < hi) z = next;
    }
    return z;
}

double poly_root_on_bracket(const PolyParams& p, double lo, double hi) {
    return bisect([&](double z) { return poly_value(p, z); },
                  [&](double z) { return poly_derivative(p, z); }, lo, hi);
}

std::vector<Root> three_type_roots(const PolyParams& p) {
    std::vector<Root> roots;
    const auto value = [&](double z) { return poly_value(p, z); };
    const auto deriv = [&](double z) { return poly_derivative(p, z); };

    // P is convex on (0, inf) for beta <= 1; with P(0) < 0 that leaves the
    // single crossing at z = 1.
    const double z_star = (p.beta - 1.0) / (p.a * (p.beta + 1.0));
    if (z_star <= 0.0 || deriv(z_star) >= 0.0) {
        roots.push_back({1.0, 1});
        return roots;
    }

    // P' dips negative: locate the critical points c1 < z_star < c2 of P.
    double lo = z_star;
    while (deriv(lo) < 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) certification_failure(p, "the lower critical point");
    }
    double hi = z_star;
    while (deriv(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e12) certification_failure(p, "the upper critical point");
    }
    const auto curvature = [&](double z) {
        return p.a * (p.beta + 1.0) * p.beta * std::pow(z, p.beta - 1.0) -
               p.beta * (p.beta - 1.0) * std::pow(z, p.beta - 2.0);
    };
    const double c1 = bisect(deriv, curvature, lo, z_star);
    const double c2 = bisect(deriv, curvature, z_star, hi);
    const double p_max = value(c1);
    const double p_min = value(c2);

    // Local max on the axis: double root at c1, simple root beyond c2.
    if (std::abs(p_max) <= kDoubleRootTol) {
        roots.push_back({c1, 2});
        double far = std::max(2.0 * c2, 2.0);
        while (value(far) <= 0.0) {
            far *= 2.0;
            if (far > 1e12) certification_failure(p, "the outer root bracket");
        }
        roots.push_back({poly_root_on_bracket(p, c2, far), 1});
        return roots;
    }

    if (p_max > 0.0) {
        // Crossing before the local max.
        roots.push_back({poly_root_on_bracket(p, 0.0, c1), 1});
        if (std::abs(p_min) <= kDoubleRootTol) {
            roots.push_back({c2, 2});
        } else if (p_min < 0.0) {
            roots.push_back({poly_root_on_bracket(p, c1, c2), 1});
            double far = std::max(2.0 * c2, 2.0);
            while (value(far) <= 0.0) {
                far *= 2.0;
                if (far > 1e12) certification_failure(p, "the outer root bracket");
            }
            roots.push_back({poly_root_on_bracket(p, c2, far), 1});
        }
        return roots;
    }

    // Local max below the axis: the only crossing is beyond c2.
    double far = std::max(2.0 * c2, 2.0);
    while (value(far) <= 0.0) {
        far *= 2.0;
        if (far > 1e12) certification_failure(p, "the outer root bracket");
    }
    roots.push_back({poly_root_on_bracket(p, c2, far), 1});
    return roots;
}

std::vector<Root> two_type_roots(const PolyParams& p) {
    std::vector<Root> roots;
    if (const auto r = two_type_root(p.a, p.beta)) roots.push_back({*r, 1});
    roots.push_back({1.0, 1});
    return roots;
}

}  // namespace

PolyValue poly_eval(const PolyParams& params, double z) {
    if (!(params.a > 0.0) || !(params.beta > 0.0))
        throw std::invalid_argument("poly_eval: need a > 0 and beta > 0");
    if (!(z >= 0.0)) throw std::invalid_argument("poly_eval: need z >= 0");
    return {poly_value(params, z), poly_derivative(params, z)};
}

std::vector<Root> find_positive_roots(const PolyParams& params) {
    if (!(params.a > 0.0) || !(params.beta > 0.0))
        throw std::invalid_argument("find_positive_roots: need a > 0 and beta > 0");

    std::vector<Root> roots = params.variant == PolyVariant::ThreeTypeSymmetric
                                  ? three_type_roots(params)
                                  : two_type_roots(params);

    // z = 1 is a root analytically; snap the nearest numerical root onto it.
    auto nearest = std::min_element(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
        return std::abs(x.z - 1.0) < std::abs(y.z - 1.0);
    });
    if (nearest == roots.end() || std::abs(nearest->z - 1.0) > kUnitSnapTol)
        certification_failure(params, "the unit root");
    nearest->z = 1.0;

    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.z < y.z; });

    int total = 0;
    for (const Root& r : roots) {
        const PolyValue pv = poly_eval(params, r.z);
        if (r.multiplicity == 2) {
            if (std::abs(pv.value) > kDoubleRootTol || std::abs(pv.derivative) > kDoubleRootTol)
                certification_failure(params, "a double root");
        } else if (std::abs(pv.value) > kRootResidualTol) {
            certification_failure(params, "a root residual");
        }
        total += r.multiplicity;
    }
    if (params.variant == PolyVariant::ThreeTypeSymmetric && total != 1 && total != 3)
        certification_failure(params, "the root count");
    return roots;
}

int count_positive_roots(const PolyParams& params) {
    int total = 0;
    for (const Root& r : find_positive_roots(params)) total += r.multiplicity;
    return total;
}

double beta0(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("beta0: need 0 < a < 1");
    const auto residual = [a](double beta) {
        return std::pow((1.0 - 2.0 / (beta + 1.0)) / a, beta - 1.0) - (1.0 + a);
    };
    double lo = 2.0 / (1.0 - a) - 1.0;
    double hi = 2.0 * lo;
    while (residual(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e9) throw std::runtime_error("beta0: failed to bracket the solution");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) <= 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double beta1(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("beta1: need 0 < a < 1");
    const auto has_three = [a](double beta) {
        return count_positive_roots({a, beta, PolyVariant::ThreeTypeSymmetric}) == 3;
    };
    double lo = beta0(a);
    double hi = (1.0 + 2.0 * a) / (1.0 - a);
    if (has_three(lo) || !has_three(hi))
        throw std::runtime_error("beta1: root count is not monotone on the bracket");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (has_three(mid) ? hi : lo) = mid;
    }
    const double result = 0.5 * (lo + hi);
    if (has_three(result - 3e-6) || !has_three(result + 3e-6))
        throw std::runtime_error("beta1: root count is not monotone at the working tolerance");
    return result;
}

std::optional<double> two_type_root(double a, double beta) {
    if (!(a > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("two_type_root: need a > 0 and beta > 0");
    if (!((1.0 - a) / (1.0 + a) * beta > 1.0)) return std::nullopt;

    const PolyParams p{a, beta, PolyVariant::TwoTypeSymmetric};
    // P(0) = -a < 0 and P decreases through z = 1, so P > 0 just left of 1.
    double hi = 1.0;
    double probe = 0.5;
    while (poly_value(p, hi - probe) <= 0.0) {
        probe *= 0.5;
        if (probe < 1e-14)
            throw std::runtime_error("two_type_root: failed to bracket the root in (0,1)");
    }
    const double r = poly_root_on_bracket(p, 0.0, hi - probe);
    if (std::abs(poly_value(p, r)) > kRootResidualTol)
        throw std::runtime_error("two_type_root: residual certification failed");
    return r;
}

}  // namespace urnlab
