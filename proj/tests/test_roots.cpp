#include "urnlab/roots.hpp"

#include "urnlab/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace urnlab;

namespace {

constexpr PolyVariant kThree = PolyVariant::ThreeTypeSymmetric;
constexpr PolyVariant kTwo = PolyVariant::TwoTypeSymmetric;

// Closed-form non-unit roots of the beta = 2 three-type polynomial, from the
// quadratic factor a z^2 + (a - 1) z + 2a.
std::pair<double, double> quadratic_factor_roots(double a) {
    const double disc = std::sqrt(1.0 - 2.0 * a - 7.0 * a * a);
    return {(1.0 - a - disc) / (2.0 * a), (1.0 - a + disc) / (2.0 * a)};
}

// Independent bisection oracle on [lo, hi] for a sign change of P.
double bisect_oracle(const PolyParams& params, double lo, double hi) {
    auto value = [&](double z) { return poly_eval(params, z).value; };
    REQUIRE(value(lo) * value(hi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (value(lo) * value(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("roots") {

TEST_CASE("unit root and endpoint values") {
    CHECK(poly_eval({0.5, 2.0, kThree}, 1.0).value == 0.0);
    CHECK(poly_eval({0.5, 3.7, kThree}, 1.0).value == 0.0);
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = 0.02 + 3.0 * rng.uniform();
        const double beta = 0.1 + 8.0 * rng.uniform();
        CHECK(std::abs(poly_eval({a, beta, kThree}, 1.0).value) < 1e-15);
        CHECK(poly_eval({a, beta, kThree}, 0.0).value == -2.0 * a);
        CHECK(poly_eval({a, beta, kTwo}, 0.0).value == -a);
    }
}

TEST_CASE("derivative formula") {
    // P' = a(b+1) z^b - b z^(b-1) + (1+a).
    const PolyParams params{0.3, 2.5, kThree};
    for (const double z : {0.2, 0.7, 1.0, 1.9, 3.4}) {
        const double expected =
            0.3 * 3.5 * std::pow(z, 2.5) - 2.5 * std::pow(z, 1.5) + 1.3;
        CHECK(poly_eval(params, z).derivative == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("paper value: a=0.2 beta=2 root near 3.414214") {
    CHECK(std::abs(poly_eval({0.2, 2.0, kThree}, 3.414214).value) < 1e-6);
}

TEST_CASE("beta=2 roots match the quadratic factor") {
    const auto [lo02, hi02] = quadratic_factor_roots(0.2);

    const auto roots = find_positive_roots({0.2, 2.0, kThree});
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].z == doctest::Approx(lo02).epsilon(1e-12));
    CHECK(roots[1].z == 1.0);
    CHECK(roots[2].z == doctest::Approx(hi02).epsilon(1e-12));
    // At a = 1/5 the factor is exactly (z - 2)^2 = 2, i.e. roots 2 +/- sqrt(2).
    CHECK(roots[0].z == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(roots[2].z == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));

    const auto [lo26, hi26] = quadratic_factor_roots(0.26);
    const auto roots26 = find_positive_roots({0.26, 2.0, kThree});
    REQUIRE(roots26.size() == 3);
    CHECK(roots26[0].z == 1.0);
    CHECK(roots26[1].z == doctest::Approx(lo26).epsilon(1e-12));
    CHECK(roots26[2].z == doctest::Approx(hi26).epsilon(1e-12));
    // 1/(r2 + 2) reproduces the 0.2792 coordinate.
    CHECK(1.0 / (roots26[2].z + 2.0) == doctest::Approx(0.27920).epsilon(2e-4));

    const auto only = find_positive_roots({0.5, 2.0, kThree});
    REQUIRE(only.size() == 1);
    CHECK(only[0].z == 1.0);
}

TEST_CASE("residual certification on returned roots") {
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const double a = 0.02 + 0.96 * rng.uniform();
        const double beta = 0.2 + 11.0 * rng.uniform();
        const auto roots = find_positive_roots({a, beta, kThree});
        int total = 0;
        for (const Root& r : roots) {
            total += r.multiplicity;
            if (r.multiplicity == 1)
                CHECK(std::abs(poly_eval({a, beta, kThree}, r.z).value) < 1e-10);
        }
        CHECK((total == 1 || total == 3));
    }
}

TEST_CASE("a > 1 leaves only the unit root") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = 1.0 + 4.0 * rng.uniform();
        const double beta = 0.2 + 8.0 * rng.uniform();
        const auto roots = find_positive_roots({a, beta, kThree});
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].z == 1.0);
        CHECK(roots[0].multiplicity == 1);
    }
}

TEST_CASE("monotone branches: r+ grows and r- shrinks in beta") {
    double prev_hi = 0.0, prev_lo = 1e9;
    for (const double beta : {2.0, 3.0, 4.0, 5.0}) {
        const auto roots = find_positive_roots({0.2, beta, kThree});
        REQUIRE(roots.size() == 3);
        CHECK(roots[2].z > prev_hi);
        CHECK(roots[0].z < prev_lo);
        prev_hi = roots[2].z;
        prev_lo = roots[0].z;
    }
}

TEST_CASE("double root at the upper phase boundary") {
    // At beta = (1+2a)/(1-a) the unit root is double and one root sits above.
    const double a = 0.3;
    const double beta = (1.0 + 2.0 * a) / (1.0 - a);
    const auto roots = find_positive_roots({a, beta, kThree});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].z == 1.0);
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[1].z > 1.0);
    CHECK(roots[1].multiplicity == 1);
}

TEST_CASE("beta0 solves its defining equation") {
    const auto residual = [](double a, double beta) {
        return std::pow((1.0 - 2.0 / (beta + 1.0)) / a, beta - 1.0) - (1.0 + a);
    };
    const double b05 = beta0(0.5);
    CHECK(b05 > 3.0);
    CHECK(b05 < 28.0);
    CHECK(std::abs(residual(0.5, b05)) < 1e-9);
    // Sign-change oracle around the returned value.
    CHECK(residual(0.5, b05 - 1e-3) < 0.0);
    CHECK(residual(0.5, b05 + 1e-3) > 0.0);

    CHECK(beta0(0.9) > 2.0 / 0.1 - 1.0);

    Rng rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const double a = 0.05 + 0.9 * rng.uniform();
        CHECK(std::abs(residual(a, beta0(a))) < 1e-9);
    }
}

TEST_CASE("beta1 sits between its bounds and flips the root count") {
    for (const double a : {0.2, 0.3, 0.5, 0.7, 0.9}) {
        const double b1 = beta1(a);
        CHECK(b1 > 1.0);
        CHECK(b1 >= beta0(a) - 1e-6);
        CHECK(b1 < (1.0 + 2.0 * a) / (1.0 - a));
        CHECK(count_positive_roots({a, b1 - 1e-4, kThree}) == 1);
        CHECK(count_positive_roots({a, b1 + 1e-4, kThree}) == 3);
    }
    CHECK(beta1(0.3) < beta1(0.5));
    CHECK(beta1(0.5) < beta1(0.7));
    CHECK(beta1(0.9) > beta1(0.5));
    CHECK(beta1(0.9) < 28.0);
}

TEST_CASE("two-type root: existence criterion and oracle value") {
    SUBCASE("a=0.2 beta=2 has the root") {
        const auto r = two_type_root(0.2, 2.0);
        REQUIRE(r.has_value());
        CHECK(*r > 0.0);
        CHECK(*r < 1.0);
        CHECK(std::abs(poly_eval({0.2, 2.0, kTwo}, *r).value) < 1e-10);
        // Independent bisection on 0.2 z^3 - z^2 + z - 0.2 over (0, 0.5).
        const double oracle = bisect_oracle({0.2, 2.0, kTwo}, 1e-12, 0.5);
        CHECK(*r == doctest::Approx(oracle).epsilon(1e-10));
        // The colour swap maps the root to 1/r, which is again a root.
        CHECK(std::abs(poly_eval({0.2, 2.0, kTwo}, 1.0 / *r).value) < 1e-9);
    }
    SUBCASE("below the criterion there is none") {
        CHECK_FALSE(two_type_root(0.5, 2.0).has_value());
        CHECK_FALSE(two_type_root(0.1, 1.0).has_value());
        CHECK_FALSE(two_type_root(0.9, 1.0).has_value());
    }
    SUBCASE("find_positive_roots lists (0,1) root plus 1") {
        const auto with = find_positive_roots({0.2, 2.0, kTwo});
        REQUIRE(with.size() == 2);
        CHECK(with[0].z < 1.0);
        CHECK(with[1].z == 1.0);
        const auto without = find_positive_roots({0.5, 2.0, kTwo});
        REQUIRE(without.size() == 1);
        CHECK(without[0].z == 1.0);
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(find_positive_roots({-0.1, 2.0, kThree}), std::invalid_argument);
    CHECK_THROWS_AS(find_positive_roots({0.2, 0.0, kThree}), std::invalid_argument);
    CHECK_THROWS_AS(beta0(1.2), std::invalid_argument);
    CHECK_THROWS_AS(beta1(0.0), std::invalid_argument);
    CHECK_THROWS_AS(poly_eval({0.2, 2.0, kThree}, -1.0), std::invalid_argument);
}

}  // TEST_SUITE
