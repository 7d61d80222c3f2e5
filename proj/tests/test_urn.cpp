#include "urnlab/urn.hpp"

#include "urnlab/vector_field.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace urnlab;

namespace {

CountVector counts3(std::int64_t a, std::int64_t b, std::int64_t c) {
    CountVector v(3);
    v << a, b, c;
    return v;
}

ModelSpec random_model(Rng& rng) {
    const int pick = static_cast<int>(rng.uniform() * 3.0);
    const double a = 0.05 + 2.0 * rng.uniform();
    const double beta = 0.1 + 6.0 * rng.uniform();
    if (pick == 0) return symmetric_model(3, a, beta);
    if (pick == 1) return cyclic_model(a, beta);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform();
    m.diagonal().array() += 0.2;
    return general_model(m, beta);
}

UrnState random_state(Rng& rng, int d) {
    CountVector v(d);
    for (int i = 0; i < d; ++i)
        v[i] = 1 + static_cast<std::int64_t>(rng.uniform() * 1e9);
    return initial_state(v);
}

}  // namespace

TEST_SUITE("urn") {

TEST_CASE("classical urn: probabilities equal proportions") {
    const ModelSpec model = general_model(Eigen::MatrixXd::Identity(3, 3), 1.0);
    const auto p = transition_probabilities(model, initial_state(counts3(2, 1, 1)));
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(p[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("a=1 symmetric: uniform draw regardless of counts") {
    Rng rng(11);
    const ModelSpec model = symmetric_model(3, 1.0, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = transition_probabilities(model, random_state(rng, 3));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(p[i] - 1.0 / 3.0) < 1e-15);
    }
}

TEST_CASE("hand-computed interaction example") {
    // a = 0.2, beta = 2, counts (1,1,2): u = A (1,1,4) = (2.0, 2.0, 4.4).
    const ModelSpec model = symmetric_model(3, 0.2, 2.0);
    const auto p = transition_probabilities(model, initial_state(counts3(1, 1, 2)));

    Eigen::Vector3d w(1.0, 1.0, 4.0);
    const Eigen::Vector3d u = model.A * w;
    const Eigen::Vector3d oracle = u / u.sum();
    CHECK(u[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(u[2] == doctest::Approx(4.4).epsilon(1e-15));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(p[i] - oracle[i]) < 1e-14);
    CHECK(p[0] == doctest::Approx(0.23809523809523808).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(0.52380952380952384).epsilon(1e-12));
}

TEST_CASE("runaway leader: dominant colour is drawn almost surely") {
    // A = I, beta = 2, counts (1e6, 1, 1): p_1 = 1e12/(1e12 + 2).
    const ModelSpec model = general_model(Eigen::MatrixXd::Identity(3, 3), 2.0);
    const auto p = transition_probabilities(model, initial_state(counts3(1000000, 1, 1)));
    CHECK(p[0] >= 1.0 - 3e-12);
    CHECK(p[1] + p[2] <= 3e-12);
}

TEST_CASE("step conserves balls and increments n") {
    Rng rng(1);
    const ModelSpec model = symmetric_model(3, 0.5, 2.0);
    UrnState state = initial_state(3);
    const int colour = step(model, state, rng);
    CHECK(colour >= 0);
    CHECK(colour < 3);
    CHECK(state.counts.sum() == 4);
    CHECK(state.n == 1);
    CHECK(state.total() == 4);
}

TEST_CASE("fixed seed is reproducible") {
    const ModelSpec model = symmetric_model(3, 0.5, 2.0);
    CountVector first, second;
    for (CountVector* out : {&first, &second}) {
        Rng rng(42);
        UrnState state = initial_state(3);
        for (int k = 0; k < 10; ++k) step(model, state, rng);
        *out = state.counts;
    }
    CHECK(first == second);
}

TEST_CASE("simulate: record shape and conservation") {
    const ModelSpec model = symmetric_model(3, 0.2, 2.0);
    CHECK_THROWS_AS(simulate(model, initial_state(3), 0, 1), std::invalid_argument);

    const auto one = simulate(model, initial_state(3), 1, 1);
    CHECK(one.final_state.total() == 4);
    CHECK(one.size() == 2);

    SimulateOptions opts;
    opts.thinning = 3;
    const auto record = simulate(model, initial_state(3), 10, 5, opts);
    CHECK(record.sample_steps == std::vector<std::int64_t>{0, 3, 6, 9, 10});
    const auto exact = simulate(model, initial_state(3), 9, 5, opts);
    CHECK(exact.sample_steps == std::vector<std::int64_t>{0, 3, 6, 9});

    for (const auto& point : record.points) {
        CHECK(point.coords.minCoeff() >= 0.0);
        CHECK(std::abs(point.coords.sum() - 1.0) <= 1e-12);
    }
}

TEST_CASE("simulate: bit-identical records for equal inputs") {
    const ModelSpec model = cyclic_model(1.0, 3.0);
    SimulateOptions opts;
    opts.thinning = 7;
    const auto a = simulate(model, initial_state(3), 5000, 99, opts);
    const auto b = simulate(model, initial_state(3), 5000, 99, opts);
    REQUIRE(a.size() == b.size());
    CHECK(a.sample_steps == b.sample_steps);
    for (std::size_t t = 0; t < a.size(); ++t)
        CHECK(a.points[t].coords == b.points[t].coords);
    CHECK(a.final_state.counts == b.final_state.counts);
}

TEST_CASE("count overflow is refused") {
    CountVector big(3);
    big << kMaxExactTotal - 5, 1, 1;
    CHECK_THROWS_AS(initial_state(counts3(kMaxExactTotal, 1, 1)), std::overflow_error);
    const auto state = initial_state(big);
    CHECK_THROWS_AS(simulate(symmetric_model(3, 0.5, 2.0), state, 100, 1), std::overflow_error);
}

TEST_CASE("zero counts are rejected") {
    CHECK_THROWS_AS(initial_state(counts3(0, 1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(UrnState(counts3(1, 1, 1), 2, 0), std::invalid_argument);
}

TEST_CASE("proportions") {
    CHECK(proportions(initial_state(3)).coords.isApprox(Eigen::Vector3d::Constant(1.0 / 3.0)));
    const auto p = proportions(initial_state(counts3(2, 1, 1)));
    CHECK(p.coords == Eigen::Vector3d(0.5, 0.25, 0.25));
    const auto q = proportions(initial_state(counts3(5, 3, 2)));
    CHECK(q.coords == Eigen::Vector3d(0.5, 0.3, 0.2));
}

TEST_CASE("property: probabilities normalized over random models") {
    Rng rng(777);
    for (int trial = 0; trial < 10000; ++trial) {
        const ModelSpec model = random_model(rng);
        const auto p = transition_probabilities(model, random_state(rng, model.d));
        CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
        CHECK(p.minCoeff() >= 0.0);
        CHECK(p.maxCoeff() <= 1.0);
    }
}

TEST_CASE("property: symmetric model is exactly permutation-equivariant") {
    Rng rng(31337);
    std::array<int, 3> perm{0, 1, 2};
    for (int trial = 0; trial < 200; ++trial) {
        const double a = 0.05 + 2.0 * rng.uniform();
        const double beta = 0.1 + 6.0 * rng.uniform();
        const ModelSpec model = symmetric_model(3, a, beta);
        const UrnState state = random_state(rng, 3);
        const auto p = transition_probabilities(model, state);

        std::shuffle(perm.begin(), perm.end(),
                     std::mt19937_64(static_cast<std::uint64_t>(trial)));
        CountVector permuted(3);
        for (int i = 0; i < 3; ++i) permuted[perm[static_cast<std::size_t>(i)]] = state.counts[i];
        const auto q = transition_probabilities(model, initial_state(permuted));
        for (int i = 0; i < 3; ++i)
            CHECK(q[perm[static_cast<std::size_t>(i)]] == p[i]);
    }
}

TEST_CASE("property: one-step expectation equals the rescaled drift") {
    // E[x(n+1) - x(n) | state] = gamma * F(x) with gamma = 1/(n0 + n + 1).
    Rng rng(555);
    for (int trial = 0; trial < 200; ++trial) {
        const ModelSpec model = random_model(rng);
        const UrnState state = random_state(rng, model.d);
        const auto p = transition_probabilities(model, state);
        const Eigen::VectorXd x = proportions(state).coords;
        const double gamma = 1.0 / (static_cast<double>(state.total()) + 1.0);

        Eigen::VectorXd expectation = Eigen::VectorXd::Zero(model.d);
        for (int i = 0; i < model.d; ++i) {
            Eigen::VectorXd delta = -x;
            delta[i] += 1.0;
            expectation += p[i] * gamma * delta;
        }
        const Eigen::VectorXd rhs = gamma * drift(model, x);
        CHECK((expectation - rhs).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
}

}  // TEST_SUITE
