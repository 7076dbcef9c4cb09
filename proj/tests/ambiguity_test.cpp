#include "oracles.hpp"

#include "plauset/ambiguity.hpp"

#include <doctest.h>

#include <cmath>

using namespace plauset;

namespace {

TransitionSampleBatch batch_at_distances(const numvec& center, const numvec& distances) {
    // S=2 rows whose L1 distance from center is exactly the requested value
    std::vector<numvec> rows;
    for (double d : distances) rows.push_back({center[0] + d / 2, center[1] - d / 2});
    return TransitionSampleBatch::from_rows(rows);
}

}  // namespace

TEST_CASE("order statistic uses the ceiling convention") {
    const numvec tenth{0.5, 0.1, 0.9, 0.3, 0.7, 1.0, 0.2, 0.8, 0.4, 0.6};
    CHECK(order_statistic(tenth, 0.7) == 0.7);
    CHECK(order_statistic(tenth, 0.0) == 0.1);
    CHECK(order_statistic(tenth, 1.0) == 1.0);
    CHECK(order_statistic(tenth, 0.71) == 0.8);
    CHECK_THROWS(order_statistic({}, 0.5));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u;
    for (std::size_t n : {1u, 7u, 40u, 1000u}) {
        numvec xs(n);
        for (auto& x : xs) x = u(rng);
        numvec sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        for (double c : {0.0, 0.001, 0.05, 0.5, 0.93, 0.995, 0.9999, 1.0}) {
            const std::size_t k = std::clamp<std::size_t>(
                static_cast<std::size_t>(std::ceil(c * static_cast<double>(n) - 1e-9)), 1, n);
            CHECK(order_statistic(xs, c) == sorted[k - 1]);
        }
    }
}

TEST_CASE("Hoeffding radius") {
    CHECK(hoeffding_radius(0, 2, 1, 0.1) == 2.0);
    CHECK(hoeffding_radius(8, 2, 1, 0.1) == doctest::Approx(std::sqrt(0.25 * std::log(80.0))).epsilon(1e-12));
    CHECK(hoeffding_radius(8, 2, 1, 0.1) == doctest::Approx(1.0467).epsilon(1e-4));
    CHECK(hoeffding_radius(32, 2, 1, 0.1) == doctest::Approx(hoeffding_radius(8, 2, 1, 0.1) / 2).epsilon(1e-12));
    CHECK(hoeffding_radius(1, 20, 4, 0.05) == 2.0);
    CHECK_THROWS(hoeffding_radius(3, 2, 1, 0.0));
    CHECK_THROWS(hoeffding_radius(3, 2, 1, 1.0));
}

TEST_CASE("Bayes credible radius") {
    const numvec c{0.5, 0.5};
    CHECK(bayes_credible_radius(TransitionSampleBatch::from_rows({c, c, c}), c, 0.05) == 0.0);
    auto batch = batch_at_distances(c, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
    CHECK(bayes_credible_radius(batch, c, 0.3) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(bayes_credible_radius(batch, c, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(bayes_credible_radius(TransitionSampleBatch{}, c, 0.1));
}

TEST_CASE("BayesUCRL radius tracks the episode") {
    const numvec c{0.5, 0.5};
    auto batch = batch_at_distances(c, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0});
    CHECK(bayes_ucrl_radius(batch, c, 2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bayes_ucrl_radius(batch, c, 1) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(bayes_ucrl_radius(batch, c, 1000000) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bayes_ucrl_radius(batch, c, 4, 2) == bayes_ucrl_radius(batch, c, 8));
    CHECK_THROWS(bayes_ucrl_radius(batch, c, 0));
}

TEST_CASE("optimistic L1 response examples") {
    auto r = optimistic_l1_response(numvec{0.5, 0.3, 0.2}, 0.2, numvec{3, 2, 1});
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(r.distribution[0] == doctest::Approx(0.6));
    CHECK(r.distribution[1] == doctest::Approx(0.3));
    CHECK(r.distribution[2] == doctest::Approx(0.1));
    CHECK(oracle::l1_response({0.5, 0.3, 0.2}, 0.2, {3, 2, 1}, Direction::optimistic, 1000) ==
          doctest::Approx(2.5).epsilon(1e-3));

    CHECK(optimistic_l1_value(numvec{0.5, 0.3, 0.2}, 0.0, numvec{3, 2, 1}) == doctest::Approx(2.3));
    auto full = optimistic_l1_response(numvec{0.5, 0.3, 0.2}, 2.0, numvec{3, 2, 1});
    CHECK(full.value == 3.0);
    CHECK(full.distribution == numvec{1, 0, 0});
    CHECK(optimistic_l1_value(numvec{0.5, 0.3, 0.2}, 2.0, numvec{3, 2, 1}, Direction::pessimistic) == doctest::Approx(1.0));
}

TEST_CASE("L1 response rejects invalid balls") {
    CHECK_THROWS(optimistic_l1_response(numvec{0.5, 0.6}, 0.1, numvec{1, 2}));
    CHECK_THROWS(optimistic_l1_response(numvec{0.5, 0.5}, -0.1, numvec{1, 2}));
    CHECK_THROWS(optimistic_l1_response(numvec{0.5, 0.5}, 2.5, numvec{1, 2}));
    CHECK_THROWS(optimistic_l1_response(numvec{0.5, 0.5}, 0.1, numvec{1, 2, 3}));
}

TEST_CASE("L1 response agrees with vertex enumeration and is feasible") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t S = 2 + trial % 4;
        auto c = oracle::random_simplex(S, rng);
        const double psi = trial % 10 == 0 ? 0.0 : 2.0 * u(rng);
        numvec z(S);
        for (auto& x : z) x = 5.0 * u(rng) - 2.0;
        for (auto dir : {Direction::optimistic, Direction::pessimistic}) {
            auto r = optimistic_l1_response(c, psi, z, dir);
            CHECK(on_simplex(r.distribution));
            CHECK(l1_distance(r.distribution, c) <= psi + 1e-9);
            CHECK(r.value == doctest::Approx(oracle::l1_response_vertices(c, psi, z, dir)).epsilon(1e-9));
            CHECK(optimistic_l1_value(c, psi, z, dir) == doctest::Approx(r.value).epsilon(1e-12));
        }
    }
}

TEST_CASE("L1 response is monotone in the radius and sandwiches members of the ball") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t S = 2 + trial % 5;
        auto c = oracle::random_simplex(S, rng);
        numvec z(S);
        for (auto& x : z) x = u(rng);
        double prev_hi = -1e300, prev_lo = 1e300;
        for (double psi = 0.0; psi <= 2.0; psi += 0.1) {
            const double hi = optimistic_l1_value(c, psi, z, Direction::optimistic);
            const double lo = optimistic_l1_value(c, psi, z, Direction::pessimistic);
            CHECK(hi >= prev_hi - 1e-12);
            CHECK(lo <= prev_lo + 1e-12);
            prev_hi = hi;
            prev_lo = lo;

            // a point inside the ball
            auto q = oracle::random_simplex(S, rng);
            const double d = l1_distance(q, c);
            if (d > psi && d > 0) {
                const double t = psi / d;
                for (std::size_t i = 0; i < S; ++i) q[i] = c[i] + t * (q[i] - c[i]);
            }
            double val = 0.0;
            for (std::size_t i = 0; i < S; ++i) val += q[i] * z[i];
            CHECK(lo <= val + 1e-9);
            CHECK(val <= hi + 1e-9);
        }
    }
}

TEST_CASE("optimistic value iteration with zero radii is value iteration on the centers") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        auto mdp = oracle::random_mdp(3 + trial % 3, 2, 4, rng);
        PlausibilityCollection sets(mdp.num_states(), mdp.num_actions());
        for (std::size_t s = 0; s < mdp.num_states(); ++s)
            for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
                auto row = mdp.transition(s, a);
                sets.at(s, a) = {numvec(row.begin(), row.end()), 0.0};
            }
        CHECK(sets.complete());
        auto robust = optimistic_value_iteration(mdp.known(), sets);
        auto plain = value_iteration(mdp);
        for (std::size_t i = 0; i < plain.values.raw().size(); ++i)
            CHECK(robust.values.raw()[i] == doctest::Approx(plain.values.raw()[i]).epsilon(1e-12));
        CHECK(robust.policy == plain.policy);
    }
}

TEST_CASE("full balls bound every kernel from above") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        auto mdp = oracle::random_mdp(3, 2, 3, rng);
        PlausibilityCollection sets(3, 2);
        for (std::size_t s = 0; s < 3; ++s)
            for (std::size_t a = 0; a < 2; ++a) sets.at(s, a) = {oracle::random_simplex(3, rng), 2.0};
        const double bound = initial_value(mdp.known(), optimistic_value_iteration(mdp.known(), sets).values);
        for (int k = 0; k < 10; ++k) {
            numvec kernel;
            for (int i = 0; i < 6; ++i) {
                auto row = oracle::random_simplex(3, rng);
                kernel.insert(kernel.end(), row.begin(), row.end());
            }
            auto other = mdp.with_transitions(kernel);
            CHECK(initial_value(other.known(), value_iteration(other).values) <= bound + 1e-9);
        }
    }
}

TEST_CASE("optimistic value iteration matches a ball-by-ball brute force") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, 0.8);
    for (int trial = 0; trial < 10; ++trial) {
        auto mdp = oracle::random_mdp(3, 2, 2, rng);
        PlausibilityCollection sets(3, 2);
        for (std::size_t s = 0; s < 3; ++s)
            for (std::size_t a = 0; a < 2; ++a) sets.at(s, a) = {oracle::random_simplex(3, rng), u(rng)};
        for (auto dir : {Direction::optimistic, Direction::pessimistic}) {
            const double got = initial_value(mdp.known(), optimistic_value_iteration(mdp.known(), sets, dir).values);
            CHECK(got == doctest::Approx(oracle::robust_value(mdp.known(), sets, dir)).epsilon(1e-9));
        }
    }
}

TEST_CASE("optimistic value iteration rejects mismatched sets") {
    std::mt19937_64 rng(1);
    auto mdp = oracle::random_mdp(3, 2, 2, rng);
    CHECK_THROWS(optimistic_value_iteration(mdp.known(), PlausibilityCollection(2, 2)));
    CHECK_FALSE(PlausibilityCollection(3, 2).complete());
}
