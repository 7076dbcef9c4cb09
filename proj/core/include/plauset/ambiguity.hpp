#pragma once

#include "plauset/mdp.hpp"
#include "plauset/posterior.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace plauset {

/// Whether a set is used to bound returns from above or below.
enum class Direction { optimistic, pessimistic };

/// {p in simplex : ||p - center||_1 <= radius}
struct L1Ball {
    numvec center;
    double radius = 0.0;
};

/// One L1Ball per state-action pair, layout [s * A + a].
class PlausibilityCollection {
public:
    PlausibilityCollection() = default;
    PlausibilityCollection(std::size_t num_states, std::size_t num_actions)
        : num_states_(num_states), num_actions_(num_actions), balls_(num_states * num_actions) {}

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }

    const L1Ball& at(std::size_t s, std::size_t a) const { return balls_.at(s * num_actions_ + a); }
    L1Ball& at(std::size_t s, std::size_t a) { return balls_.at(s * num_actions_ + a); }

    /// Every ball has a center on the simplex and a radius in [0, 2].
    bool complete() const;

private:
    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    std::vector<L1Ball> balls_;
};

/**
 * Empirical order statistic at the given coverage level: the k-th smallest
 * value with k = max(1, ceil(coverage * N)), clamped to N.
 */
double order_statistic(std::vector<double> values, double coverage);

/// L1 distance between two vectors of equal length.
double l1_distance(std::span<const double> a, std::span<const double> b);

/// Distribution-free radius sqrt((2/n) log(S A 2^S / delta)), clamped to [0,2]; 2 when n = 0.
double hoeffding_radius(std::size_t n, std::size_t num_states, std::size_t num_actions, double delta);

/// Smallest radius covering at least ceil((1 - delta) N) of the sampled L1 distances to center.
double bayes_credible_radius(const TransitionSampleBatch& batch, std::span<const double> center, double delta);

/**
 * Credible radius with delta = min(1/episode, 1) / pairs, so the coverage
 * grows towards the full posterior as episodes accumulate. pairs splits the
 * budget across state-action pairs; 1 leaves it unsplit.
 */
double bayes_ucrl_radius(const TransitionSampleBatch& batch, std::span<const double> center, std::size_t episode,
                         std::size_t pairs = 1);

struct Response {
    double value = 0.0;
    numvec distribution;
};

/**
 * Exact solution of max_{p in simplex, ||p - center||_1 <= radius} p^T z
 * (or min for the pessimistic direction).
 *
 * Moves up to radius/2 of probability mass onto the best state, taking it
 * from the worst states first.
 */
Response optimistic_l1_response(std::span<const double> center, double radius, std::span<const double> z,
                                Direction direction = Direction::optimistic);

/// Only the value of optimistic_l1_response, without allocating the distribution.
double optimistic_l1_value(std::span<const double> center, double radius, std::span<const double> z,
                           Direction direction = Direction::optimistic);

/**
 * Backward induction where each backup takes the best (or worst) kernel row
 * within the state-action ball. The greedy policy breaks ties by the lowest
 * action index.
 */
Solution optimistic_value_iteration(const KnownModel& known, const PlausibilityCollection& sets,
                                    Direction direction = Direction::optimistic);

}  // namespace plauset
