#pragma once

#include <optional>
#include <vector>

namespace urnlab {

/// Characteristic polynomial whose positive roots generate the stationary
/// points of the symmetric model.
///   ThreeTypeSymmetric: P(z) = a z^(b+1) - z^b + (1+a) z - 2a
///   TwoTypeSymmetric:   P(z) = a z^(b+1) - z^b + z - a
/// z = 1 is a root of both for every a, beta > 0.
enum class PolyVariant { ThreeTypeSymmetric, TwoTypeSymmetric };

struct PolyParams {
    double a = 0.0;
    double beta = 0.0;
    PolyVariant variant = PolyVariant::ThreeTypeSymmetric;
};

struct PolyValue {
    double value = 0.0;
    double derivative = 0.0;
};

PolyValue poly_eval(const PolyParams& params, double z);

struct Root {
    double z = 0.0;
    int multiplicity = 1;
};

/// All roots of P in (0, inf), ascending, double roots reported once with
/// multiplicity 2. Brackets are placed deterministically from the polynomial's
/// shape: P(0) < 0, P -> +inf, concave below z* = (b-1)/(a(b+1)) and convex
/// above, so there are one or three roots counting multiplicity. Every root is
/// certified by a sign change (or a derivative zero for double roots); an
/// uncertifiable configuration throws instead of dropping roots.
///
/// TwoTypeSymmetric returns z = 1 plus the root in (0, 1) when it exists.
/// (Roots above 1 are the images 1/r under the colour swap and are omitted.)
std::vector<Root> find_positive_roots(const PolyParams& params);

/// Sum of multiplicities of the positive roots.
int count_positive_roots(const PolyParams& params);

/// Exponent below which P' > 0 on all of (0, inf) (so z = 1 is the only
/// root): the unique beta > 1 solving 1 + a = ((1 - 2/(beta+1))/a)^(beta-1).
/// Defined for 0 < a < 1.
double beta0(double a);

/// Phase boundary in beta for the three-type symmetric model: below it P has
/// one positive root, above it three. Lies strictly between beta0(a) and
/// (1+2a)/(1-a). Bisection on the certified root count, to 1e-6.
double beta1(double a);

/// Root of the two-type polynomial in (0, 1); present iff
/// ((1-a)/(1+a)) * beta > 1.
std::optional<double> two_type_root(double a, double beta);

}  // namespace urnlab
