#include "plauset/ambiguity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace plauset {

namespace {

void check_ball(std::span<const double> center, double radius, std::span<const double> z) {
    if (center.size() != z.size() || center.empty()) throw std::invalid_argument("center and z differ in length");
    if (!on_simplex(center, 1e-7)) throw std::invalid_argument("ball center is not on the simplex");
    if (!(radius >= -1e-12 && radius <= 2.0 + 1e-12)) throw std::invalid_argument("ball radius outside [0,2]");
}

// Greedy mass shift on a sign-adjusted objective. Writes the maximizer into
// `out` when it is non-empty and returns the maximal value of p^T (sign * z).
double greedy_shift(std::span<const double> center, double radius, std::span<const double> z, double sign,
                    std::span<double> out) {
    const std::size_t n = z.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (sign * z[i] > sign * z[best]) best = i;

    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) value += center[i] * sign * z[i];
    if (!out.empty()) std::copy(center.begin(), center.end(), out.begin());

    double budget = std::min(std::clamp(radius, 0.0, 2.0) / 2.0, 1.0 - center[best]);
    if (budget <= 0.0) return value;

    value += budget * sign * z[best];
    if (!out.empty()) out[best] += budget;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sign * z[a] < sign * z[b]; });
    for (std::size_t i : order) {
        if (budget <= 0.0) break;
        if (i == best) continue;
        const double take = std::min(center[i], budget);
        if (take <= 0.0) continue;
        value -= take * sign * z[i];
        if (!out.empty()) out[i] -= take;
        budget -= take;
    }
    return value;
}

}  // namespace

bool PlausibilityCollection::complete() const {
    if (balls_.size() != num_states_ * num_actions_ || balls_.empty()) return false;
    for (const auto& b : balls_) {
        if (b.center.size() != num_states_ || !on_simplex(b.center, 1e-7)) return false;
        if (!(b.radius >= 0.0 && b.radius <= 2.0)) return false;
    }
    return true;
}

double order_statistic(std::vector<double> values, double coverage) {
    if (values.empty()) throw std::invalid_argument("order statistic of an empty sample");
    const double n = static_cast<double>(values.size());
    // the small offset keeps products like 0.7 * 10 from rounding up to the next index
    double k = std::ceil(std::clamp(coverage, 0.0, 1.0) * n - 1e-9);
    k = std::clamp(k, 1.0, n);
    const auto idx = static_cast<std::size_t>(k) - 1;
    if (const std::size_t above = values.size() - 1 - idx; above < 16) {
        // keep the above+1 largest values, sorted descending
        std::array<double, 16> top;
        std::size_t filled = 0;
        for (double x : values) {
            if (filled <= above) {
                std::size_t j = filled++;
                for (; j > 0 && top[j - 1] < x; --j) top[j] = top[j - 1];
                top[j] = x;
            } else if (x > top[above]) {
                std::size_t j = above;
                for (; j > 0 && top[j - 1] < x; --j) top[j] = top[j - 1];
                top[j] = x;
            }
        }
        return top[above];
    }
    if (idx < 16) {
        std::array<double, 16> low;
        std::size_t filled = 0;
        for (double x : values) {
            if (filled <= idx) {
                std::size_t j = filled++;
                for (; j > 0 && low[j - 1] > x; --j) low[j] = low[j - 1];
                low[j] = x;
            } else if (x < low[idx]) {
                std::size_t j = idx;
                for (; j > 0 && low[j - 1] > x; --j) low[j] = low[j - 1];
                low[j] = x;
            }
        }
        return low[idx];
    }
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx), values.end());
    return values[idx];
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

double hoeffding_radius(std::size_t n, std::size_t num_states, std::size_t num_actions, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta out of (0,1)");
    if (n == 0) return 2.0;
    // log(S A 2^S / delta) without forming 2^S
    const double log_term = std::log(static_cast<double>(num_states)) + std::log(static_cast<double>(num_actions)) +
                            static_cast<double>(num_states) * std::log(2.0) - std::log(delta);
    return std::clamp(std::sqrt(2.0 / static_cast<double>(n) * log_term), 0.0, 2.0);
}

double bayes_credible_radius(const TransitionSampleBatch& batch, std::span<const double> center, double delta) {
    if (batch.empty()) throw std::invalid_argument("credible radius of an empty batch");
    if (center.size() != batch.num_states()) throw std::invalid_argument("center length differs from the batch");
    std::vector<double> dist(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) dist[i] = l1_distance(batch.sample(i), center);
    return std::clamp(order_statistic(std::move(dist), 1.0 - delta), 0.0, 2.0);
}

double bayes_ucrl_radius(const TransitionSampleBatch& batch, std::span<const double> center, std::size_t episode,
                         std::size_t pairs) {
    if (episode == 0) throw std::invalid_argument("episodes are numbered from 1");
    const double delta = std::min(1.0 / static_cast<double>(episode), 1.0) / static_cast<double>(std::max<std::size_t>(pairs, 1));
    return bayes_credible_radius(batch, center, delta);
}

Response optimistic_l1_response(std::span<const double> center, double radius, std::span<const double> z,
                                Direction direction) {
    check_ball(center, radius, z);
    Response r;
    r.distribution.assign(center.size(), 0.0);
    const double sign = direction == Direction::optimistic ? 1.0 : -1.0;
    greedy_shift(center, radius, z, sign, r.distribution);
    r.value = std::inner_product(r.distribution.begin(), r.distribution.end(), z.begin(), 0.0);
    return r;
}

double optimistic_l1_value(std::span<const double> center, double radius, std::span<const double> z,
                           Direction direction) {
    const double sign = direction == Direction::optimistic ? 1.0 : -1.0;
    return sign * greedy_shift(center, radius, z, sign, {});
}

Solution optimistic_value_iteration(const KnownModel& known, const PlausibilityCollection& sets, Direction direction) {
    known.check_shape();
    const std::size_t H = known.horizon, S = known.num_states, A = known.num_actions;
    if (sets.num_states() != S || sets.num_actions() != A) throw std::invalid_argument("sets do not match the model");
    Solution sol{StageValues(H, S), Policy(H, S)};
    if (!known.terminal_values.empty())
        std::copy(known.terminal_values.begin(), known.terminal_values.end(), sol.values.stage(H).begin());

    numvec z(S);
    for (std::size_t h = H; h-- > 0;) {
        auto next = sol.values.stage(h + 1);
        for (std::size_t s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_action = 0;
            for (std::size_t a = 0; a < A; ++a) {
                auto r = known.reward(s, a);
                for (std::size_t i = 0; i < S; ++i) z[i] = r[i] + known.discount * next[i];
                const auto& ball = sets.at(s, a);
                const double q = optimistic_l1_value(ball.center, ball.radius, z, direction);
                if (q > best) {
                    best = q;
                    best_action = a;
                }
            }
            sol.values(h, s) = best;
            sol.policy(h, s) = best_action;
        }
    }
    return sol;
}

}  // namespace plauset
