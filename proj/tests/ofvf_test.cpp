#include "oracles.hpp"

#include "plauset/domains.hpp"
#include "plauset/ofvf.hpp"

#include <doctest.h>

using namespace plauset;

namespace {

// S=2 rows whose projection onto v = [1, 0] is the given value
TransitionSampleBatch first_coordinate(const numvec& xs) {
    std::vector<numvec> rows;
    for (double x : xs) rows.push_back({x, 1.0 - x});
    return TransitionSampleBatch::from_rows(rows);
}

// Batches exactly as ofvf_construct draws them from the same generator state.
std::vector<TransitionSampleBatch> replay_batches(const DirichletPosterior& post, std::size_t n, Rng rng) {
    std::vector<TransitionSampleBatch> out;
    for (std::size_t s = 0; s < post.num_states(); ++s)
        for (std::size_t a = 0; a < post.num_actions(); ++a) out.push_back(post.sample_transitions(s, a, n, rng));
    return out;
}

DirichletPosterior sharp_posterior(const TabularMdp& truth, double scale) {
    numvec alpha;
    for (double p : truth.transitions()) alpha.push_back(scale * p + 1e-9);
    return DirichletPosterior(truth.num_states(), truth.num_actions(), alpha);
}

}  // namespace

TEST_CASE("value set deduplicates within 1e-6") {
    ValueSet set;
    CHECK(set.empty());
    CHECK(set.insert(numvec{1.0, 2.0}));
    CHECK_FALSE(set.insert(numvec{1.0 + 5e-7, 2.0 - 5e-7}));
    CHECK(set.insert(numvec{1.0 + 2e-6, 2.0}));
    CHECK(set.size() == 2);
    CHECK(set.contains(numvec{1.0, 2.0}));
    CHECK_FALSE(set.contains(numvec{1.0, 3.0}));
}

TEST_CASE("quantile offsets") {
    auto batch = first_coordinate({0.3, 0.1, 0.7, 0.5, 0.9, 0.2, 1.0, 0.4, 0.6, 0.8});
    const numvec v{1.0, 0.0};
    CHECK(quantile_offset(v, batch, 0.1, Direction::optimistic) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(quantile_offset(v, batch, 0.1, Direction::pessimistic) == doctest::Approx(0.1).epsilon(1e-12));

    auto point = TransitionSampleBatch::from_rows({{0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}});
    const numvec w{1.0, -2.0, 4.0};
    for (auto dir : {Direction::optimistic, Direction::pessimistic})
        CHECK(quantile_offset(w, point, 0.05, dir) == doctest::Approx(0.2 - 0.6 + 2.0).epsilon(1e-12));

    CHECK_THROWS(quantile_offset(v, TransitionSampleBatch{}, 0.1));
    CHECK_THROWS(quantile_offset(numvec{1.0, 0.0, 0.0}, batch, 0.1));
}

TEST_CASE("slice projection") {
    auto proj = project_to_slice(numvec{0.5, 0.5}, numvec{1.0, 0.0}, 0.7);
    CHECK(proj.distance == doctest::Approx(0.4));
    CHECK(proj.point[0] == doctest::Approx(0.7));

    // g outside the attainable range is clamped
    CHECK(slice_distance(numvec{0.5, 0.5}, numvec{1.0, 0.0}, 3.0) == doctest::Approx(1.0));
    // constant normal: the whole simplex
    CHECK(slice_distance(numvec{0.2, 0.8}, numvec{2.0, 2.0}, 5.0) == 0.0);

    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t S = 2 + trial % 2;
        auto p = oracle::random_simplex(S, rng);
        numvec v(S);
        for (auto& x : v) x = u(rng);
        const double g = u(rng);
        auto pr = project_to_slice(p, v, g);
        CHECK(pr.distance == doctest::Approx(oracle::slice_distance(p, v, g)).epsilon(1e-9));
        CHECK(on_simplex(pr.point));
        CHECK(l1_distance(pr.point, p) == doctest::Approx(pr.distance).epsilon(1e-9));
    }
}

TEST_CASE("minimax center examples") {
    auto one = minimax_l1_center({{{1.0, 0.0}, 0.7}});
    CHECK(one.radius == doctest::Approx(0.0));
    CHECK(one.center[0] == doctest::Approx(0.7));
    CHECK(one.center[1] == doctest::Approx(0.3));

    auto two = minimax_l1_center({{{1.0, 0.0}, 0.6}, {{0.0, 1.0}, 0.6}});
    CHECK(two.radius == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(two.center[0] == doctest::Approx(0.5));
    REQUIRE(two.witnesses.size() == 2);
    CHECK(two.witnesses[0][0] == doctest::Approx(0.6));
    CHECK(two.witnesses[1][0] == doctest::Approx(0.4));

    std::vector<Hyperplane> same(5, Hyperplane{{0.2, 0.9, 0.4}, 0.5});
    auto dup = minimax_l1_center(same);
    CHECK(dup.radius == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dup.active_planes <= 1);
    double level = 0.0;
    for (int i = 0; i < 3; ++i) level += same[0].normal[i] * dup.center[i];
    CHECK(level == doctest::Approx(0.5));
}

TEST_CASE("minimax center errors") {
    CHECK_THROWS(minimax_l1_center({}));
    CHECK_THROWS(minimax_l1_center({{{1.0, 0.0}, 0.5}, {{1.0, 0.0, 0.0}, 0.5}}));
    CHECK_THROWS(minimax_l1_center({{{1.0, std::nan("")}, 0.5}}));
    const numvec anchor{1.0, 0.0, 0.0};
    CHECK_THROWS(minimax_l1_center({{{1.0, 0.0}, 0.5}}, std::span<const double>(anchor)));
}

TEST_CASE("minimax radius matches a geometric brute force") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t S = 2 + trial % 2, k = 2 + (trial / 2) % 2;
        std::vector<Hyperplane> planes;
        for (std::size_t i = 0; i < k; ++i) {
            numvec v(S);
            for (auto& x : v) x = u(rng);
            auto q = oracle::random_simplex(S, rng);
            double g = 0.0;
            for (std::size_t j = 0; j < S; ++j) g += v[j] * q[j];
            planes.push_back({v, g});
        }
        auto got = minimax_l1_center(planes);
        const double expected = oracle::minimax_radius(planes, S == 2 ? 10000 : 200);
        CHECK(got.radius == doctest::Approx(expected).epsilon(2e-3).scale(1.0));
        CHECK(got.radius <= expected + 1e-9);
        REQUIRE(got.witnesses.size() == k);
        for (std::size_t i = 0; i < k; ++i) {
            double level = 0.0;
            for (std::size_t j = 0; j < S; ++j) level += planes[i].normal[j] * got.witnesses[i][j];
            CHECK(level == doctest::Approx(planes[i].offset).epsilon(1e-7).scale(1.0));
            CHECK(on_simplex(got.witnesses[i]));
            CHECK(l1_distance(got.witnesses[i], got.center) <= got.radius + 1e-9);
        }
    }
}

TEST_CASE("anchored center stays minimax and moves toward the anchor") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t S = 3 + trial % 3;
        std::vector<Hyperplane> planes;
        for (int i = 0; i < 3; ++i) {
            numvec v(S);
            for (auto& x : v) x = u(rng);
            auto q = oracle::random_simplex(S, rng);
            double g = 0.0;
            for (std::size_t j = 0; j < S; ++j) g += v[j] * q[j];
            planes.push_back({v, g});
        }
        auto anchor = oracle::random_simplex(S, rng);
        auto free = minimax_l1_center(planes);
        auto anchored = minimax_l1_center(planes, std::span<const double>(anchor));
        CHECK(anchored.radius <= free.radius + 1e-7);
        CHECK(l1_distance(anchored.center, anchor) <= l1_distance(free.center, anchor) + 1e-7);
        CHECK(on_simplex(anchored.center));
    }

    // one plane: the anchored center is the nearest point of its slice
    const numvec anchor{0.1, 0.6, 0.3};
    const Hyperplane plane{{0.0, 0.5, 1.0}, 0.8};
    auto c = minimax_l1_center({plane}, std::span<const double>(anchor));
    CHECK(c.radius == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(l1_distance(c.center, anchor) == doctest::Approx(oracle::slice_distance(anchor, plane.normal, plane.offset)));
}

TEST_CASE("condition check examples") {
    std::mt19937_64 rng(73);
    std::vector<numvec> rows;
    for (int i = 0; i < 50; ++i) rows.push_back(oracle::random_simplex(3, rng));
    auto batch = TransitionSampleBatch::from_rows(rows);
    const std::vector<numvec> values{{1.0, 2.0, 3.0}, {0.0, -1.0, 5.0}};
    auto full = check_condition(L1Ball{{0.2, 0.3, 0.5}, 2.0}, batch, values, 0.1);
    CHECK(full.pass);
    CHECK(full.worst_fraction == 1.0);

    const numvec hat{0.2, 0.3, 0.5};
    auto point = TransitionSampleBatch::from_rows({hat, hat, hat});
    for (auto dir : {Direction::optimistic, Direction::pessimistic}) {
        auto r = check_condition(L1Ball{hat, 0.0}, point, values, 0.1, dir);
        CHECK(r.pass);
        CHECK(r.worst_fraction == 1.0);
    }

    auto half = TransitionSampleBatch::from_rows({{0.9, 0.1}, {0.9, 0.1}, {0.5, 0.5}, {0.5, 0.5}});
    auto r = check_condition(L1Ball{{0.5, 0.5}, 0.1}, half, {{1.0, 0.0}}, 0.1);
    CHECK_FALSE(r.pass);
    CHECK(r.worst_fraction == doctest::Approx(0.5));

    CHECK_THROWS(check_condition(L1Ball{hat, 0.1}, TransitionSampleBatch{}, values, 0.1));
}

TEST_CASE("degenerate posterior: points and the true optimum in one iteration") {
    auto truth = single_state_instance();
    auto post = sharp_posterior(truth, 1e12);
    Rng rng(5);
    auto result = ofvf_construct(post, truth.known(), 0.1, Direction::optimistic, {}, rng);
    CHECK(result.optimistic_return == doctest::Approx(2.5).epsilon(1e-3));
    CHECK(result.iterations == 1);
    CHECK(result.condition_satisfied);
    for (std::size_t a = 0; a < 3; ++a) CHECK(result.sets.at(0, a).radius < 1e-3);
    CHECK(result.policy(0, 0) == 2);
}

TEST_CASE("construction invariants on both domains") {
    for (auto truth : {single_state_instance(), riverswim_instance({{"horizon", "5"}})}) {
        auto post = DirichletPosterior::uniform_prior(truth.num_states(), truth.num_actions());
        Rng sim(3);
        for (int i = 0; i < 15; ++i) {
            std::discrete_distribution<std::size_t> start(truth.initial_dist().begin(), truth.initial_dist().end());
            std::size_t s = start(sim);
            for (std::size_t h = 0; h < truth.horizon(); ++h) {
                const std::size_t a = (i + h) % truth.num_actions();
                auto row = truth.transition(s, a);
                std::discrete_distribution<std::size_t> step(row.begin(), row.end());
                const std::size_t next = step(sim);
                post.record(s, a, next);
                s = next;
            }
        }
        const std::size_t S = truth.num_states(), A = truth.num_actions(), H = truth.horizon();
        const double delta = 0.1, eps = delta / static_cast<double>(S * A);
        const OfvfCaps caps{6, 400};
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(seed);
            auto batches = replay_batches(post, caps.posterior_samples, rng);
            auto result = ofvf_construct(post, truth.known(), delta, Direction::optimistic, caps, rng);
            CHECK(result.iterations >= 1);
            CHECK(result.iterations <= caps.max_iterations);
            CHECK(result.value_set.size() <= result.iterations * H);
            CHECK(result.sets.complete());
            CHECK(result.policy.well_formed(A));
            CHECK(result.optimistic_return ==
                  doctest::Approx(initial_value(truth.known(), result.values)).epsilon(1e-12));

            // every ball reaches every quantile hyperplane
            for (std::size_t s = 0; s < S; ++s)
                for (std::size_t a = 0; a < A; ++a)
                    for (const auto& v : result.value_set.vectors()) {
                        auto z = backup_vector(truth.known(), s, a, v);
                        const double g = quantile_offset(z, batches[s * A + a], eps);
                        const auto& ball = result.sets.at(s, a);
                        CHECK(optimistic_l1_value(ball.center, ball.radius, z) >= g - 1e-6);
                    }

            if (result.condition_satisfied) {
                for (std::size_t s = 0; s < S; ++s)
                    for (std::size_t a = 0; a < A; ++a) {
                        std::vector<numvec> zs;
                        for (std::size_t h = 0; h < H; ++h)
                            zs.push_back(backup_vector(truth.known(), s, a, result.values.stage(h + 1)));
                        CHECK(check_condition(result.sets.at(s, a), batches[s * A + a], zs, eps).pass);
                    }
            }
        }
    }
}

TEST_CASE("optimistic return dominates the pessimistic one") {
    auto truth = single_state_instance();
    auto post = DirichletPosterior::uniform_prior(4, 3);
    post.record(0, 1, 2);
    post.record(0, 2, 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng a(seed), b(seed);
        auto hi = ofvf_construct(post, truth.known(), 0.1, Direction::optimistic, {}, a);
        auto lo = ofvf_construct(post, truth.known(), 0.1, Direction::pessimistic, {}, b);
        CHECK(hi.optimistic_return >= lo.optimistic_return - 1e-9);
    }
}

TEST_CASE("more data does not widen the sets") {
    auto truth = single_state_instance();
    numvec alpha;
    for (double p : truth.transitions()) alpha.push_back(1.0 + 20.0 * p);
    numvec scaled = alpha;
    for (auto& x : scaled) x *= 100.0;
    DirichletPosterior few(4, 3, alpha), many(4, 3, scaled);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng a(seed), b(seed);
        auto wide = ofvf_construct(few, truth.known(), 0.1, Direction::optimistic, {}, a);
        auto narrow = ofvf_construct(many, truth.known(), 0.1, Direction::optimistic, {}, b);
        for (std::size_t act = 0; act < 3; ++act)
            CHECK(narrow.sets.at(0, act).radius <= wide.sets.at(0, act).radius + 1e-9);
    }
}

TEST_CASE("ofvf_construct validates its inputs") {
    auto truth = single_state_instance();
    auto post = DirichletPosterior::uniform_prior(4, 3);
    Rng rng(1);
    CHECK_THROWS(ofvf_construct(post, truth.known(), 0.0, Direction::optimistic, {}, rng));
    CHECK_THROWS(ofvf_construct(post, truth.known(), 1.0, Direction::optimistic, {}, rng));
    CHECK_THROWS(ofvf_construct(post, truth.known(), 0.1, Direction::optimistic, {0, 100}, rng));
    CHECK_THROWS(ofvf_construct(post, truth.known(), 0.1, Direction::optimistic, {5, 0}, rng));
    CHECK_THROWS(ofvf_construct(DirichletPosterior::uniform_prior(3, 3), truth.known(), 0.1, Direction::optimistic, {},
                                rng));
}

TEST_CASE("ofvf_construct is deterministic per generator state") {
    auto truth = riverswim_instance({{"horizon", "6"}});
    auto post = DirichletPosterior::uniform_prior(6, 2);
    post.record(0, 1, 1);
    Rng a(9), b(9);
    auto x = ofvf_construct(post, truth.known(), 0.05, Direction::optimistic, {}, a);
    auto y = ofvf_construct(post, truth.known(), 0.05, Direction::optimistic, {}, b);
    CHECK(x.policy == y.policy);
    CHECK(x.values.raw() == y.values.raw());
    CHECK(x.iterations == y.iterations);
}
