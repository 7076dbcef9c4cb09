#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace plauset {

using numvec = std::vector<double>;

/// Tolerance used when checking that a vector lies on the probability simplex.
inline constexpr double kSimplexTolerance = 1e-9;

/**
 * The parts of a finite-horizon MDP that are treated as known by the learning
 * agents: dimensions, rewards R(s,a,s'), the initial distribution, the horizon,
 * the discount and the values of the terminal stage.
 *
 * Rewards are stored densely with layout [(s * A + a) * S + s'].
 */
struct KnownModel {
    std::size_t num_states = 0;
    std::size_t num_actions = 0;
    std::size_t horizon = 0;
    numvec rewards;
    numvec initial_dist;
    numvec terminal_values;
    double discount = 1.0;

    /// Throws std::invalid_argument when array sizes disagree with the dimensions.
    void check_shape() const;

    std::span<const double> reward(std::size_t s, std::size_t a) const {
        return {rewards.data() + (s * num_actions + a) * num_states, num_states};
    }

    friend bool operator==(const KnownModel&, const KnownModel&) = default;
};

/**
 * Tabular finite-horizon MDP: a known model together with the transition
 * kernel. Transitions share the reward layout [(s * A + a) * S + s'].
 *
 * The constructor only checks shapes; use validate() for the probabilistic
 * invariants.
 */
class TabularMdp {
public:
    TabularMdp() = default;
    TabularMdp(KnownModel known, numvec transitions);

    const KnownModel& known() const noexcept { return known_; }
    std::size_t num_states() const noexcept { return known_.num_states; }
    std::size_t num_actions() const noexcept { return known_.num_actions; }
    std::size_t horizon() const noexcept { return known_.horizon; }
    double discount() const noexcept { return known_.discount; }

    std::span<const double> transition(std::size_t s, std::size_t a) const {
        return {transitions_.data() + (s * num_actions() + a) * num_states(), num_states()};
    }
    std::span<const double> reward(std::size_t s, std::size_t a) const { return known_.reward(s, a); }
    const numvec& initial_dist() const noexcept { return known_.initial_dist; }
    const numvec& terminal_values() const noexcept { return known_.terminal_values; }
    const numvec& transitions() const noexcept { return transitions_; }

    /// Copy of this MDP with a different kernel (same known model).
    TabularMdp with_transitions(numvec transitions) const;

    friend bool operator==(const TabularMdp&, const TabularMdp&) = default;

private:
    KnownModel known_;
    numvec transitions_;
};

/// Nonstationary deterministic policy, actions indexed by (stage, state).
class Policy {
public:
    Policy() = default;
    Policy(std::size_t horizon, std::size_t num_states, std::size_t fill = 0)
        : horizon_(horizon), num_states_(num_states), actions_(horizon * num_states, fill) {}

    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t num_states() const noexcept { return num_states_; }

    std::size_t operator()(std::size_t h, std::size_t s) const { return actions_[h * num_states_ + s]; }
    std::size_t& operator()(std::size_t h, std::size_t s) { return actions_[h * num_states_ + s]; }

    /// Every stage uses the same action everywhere.
    static Policy constant(std::size_t horizon, std::size_t num_states, std::size_t action) {
        return Policy(horizon, num_states, action);
    }

    /// True when every entry is a valid index below num_actions.
    bool well_formed(std::size_t num_actions) const;

    friend bool operator==(const Policy&, const Policy&) = default;

private:
    std::size_t horizon_ = 0;
    std::size_t num_states_ = 0;
    std::vector<std::size_t> actions_;
};

/// Stage values V_h(s) for h = 0..H; stage H holds the terminal values.
class StageValues {
public:
    StageValues() = default;
    StageValues(std::size_t horizon, std::size_t num_states)
        : horizon_(horizon), num_states_(num_states), values_((horizon + 1) * num_states, 0.0) {}

    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t num_states() const noexcept { return num_states_; }

    std::span<const double> stage(std::size_t h) const {
        return {values_.data() + h * num_states_, num_states_};
    }
    std::span<double> stage(std::size_t h) { return {values_.data() + h * num_states_, num_states_}; }

    double operator()(std::size_t h, std::size_t s) const { return values_[h * num_states_ + s]; }
    double& operator()(std::size_t h, std::size_t s) { return values_[h * num_states_ + s]; }

    const numvec& raw() const noexcept { return values_; }

private:
    std::size_t horizon_ = 0;
    std::size_t num_states_ = 0;
    numvec values_;
};

struct Violation {
    std::size_t state = 0;
    std::size_t action = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    /// One violation per line; empty when valid.
    std::string describe() const;
};

ValidationReport validate(const TabularMdp& mdp);

/// Backward recursion V_h(s) = sum_s' p(s'|s,pi_h(s)) (R(s,pi_h(s),s') + gamma V_{h+1}(s')).
StageValues policy_evaluation(const TabularMdp& mdp, const Policy& policy);

struct Solution {
    StageValues values;
    Policy policy;
};

/// Optimal finite-horizon values with a greedy policy; ties go to the lowest action index.
Solution value_iteration(const TabularMdp& mdp);

/// p0^T V_0 for the given policy.
double expected_return(const TabularMdp& mdp, const Policy& policy);

/// p0^T V_0 for precomputed stage values.
double initial_value(const KnownModel& known, const StageValues& values);

/// sum_s' p[s'] (r[s'] + gamma * next[s']).
double backup(std::span<const double> p, std::span<const double> r, std::span<const double> next,
              double discount);

bool on_simplex(std::span<const double> p, double tolerance = kSimplexTolerance);

}  // namespace plauset
