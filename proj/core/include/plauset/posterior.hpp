#pragma once

#include "plauset/mdp.hpp"
#include "plauset/rng.hpp"

#include <cstddef>
#include <span>

namespace plauset {

/// N posterior draws of the transition row for one (s,a); layout [i * S + s'].
class TransitionSampleBatch {
public:
    TransitionSampleBatch() = default;
    TransitionSampleBatch(std::size_t state, std::size_t action, std::size_t num_states, numvec samples);

    std::size_t size() const noexcept { return num_states_ == 0 ? 0 : samples_.size() / num_states_; }
    bool empty() const noexcept { return size() == 0; }
    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t state() const noexcept { return state_; }
    std::size_t action() const noexcept { return action_; }

    std::span<const double> sample(std::size_t i) const {
        return {samples_.data() + i * num_states_, num_states_};
    }
    const numvec& raw() const noexcept { return samples_; }

    /// Builds a batch from explicit rows, mostly for tests.
    static TransitionSampleBatch from_rows(const std::vector<numvec>& rows);

private:
    std::size_t state_ = 0;
    std::size_t action_ = 0;
    std::size_t num_states_ = 0;
    numvec samples_;
};

/**
 * Independent Dirichlet posteriors over the next-state distribution of every
 * state-action pair. The concentration is the prior plus the observed
 * transition counts, so the posterior doubles as the sufficient statistic of
 * the dataset.
 *
 * Layout of the concentration arrays is [(s * A + a) * S + s'].
 */
class DirichletPosterior {
public:
    DirichletPosterior() = default;

    /// Prior with the given concentrations and no observations.
    DirichletPosterior(std::size_t num_states, std::size_t num_actions, numvec prior_alpha);

    /// All concentrations equal to one.
    static DirichletPosterior uniform_prior(std::size_t num_states, std::size_t num_actions);

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }

    std::span<const double> alpha(std::size_t s, std::size_t a) const { return {alpha_.data() + offset(s, a), num_states_}; }
    std::span<const double> prior(std::size_t s, std::size_t a) const { return {prior_.data() + offset(s, a), num_states_}; }

    /// Number of observed transitions out of (s,a).
    std::size_t count(std::size_t s, std::size_t a) const;

    /// Increments the concentration of s' in (s,a). Throws std::out_of_range on bad coordinates.
    void record(std::size_t s, std::size_t a, std::size_t next);

    /// alpha / sum(alpha).
    numvec mean(std::size_t s, std::size_t a) const;

    /// Kernel made of the posterior means, with the known rewards and initial distribution.
    TabularMdp mean_mdp(const KnownModel& known) const;

    /// N independent Dirichlet draws; deterministic for a given generator state.
    TransitionSampleBatch sample_transitions(std::size_t s, std::size_t a, std::size_t count, Rng& rng) const;

    /// One full MDP with every kernel row drawn independently from the posterior.
    TabularMdp sample_mdp(const KnownModel& known, Rng& rng) const;

    friend bool operator==(const DirichletPosterior&, const DirichletPosterior&) = default;

private:
    std::size_t offset(std::size_t s, std::size_t a) const { return (s * num_actions_ + a) * num_states_; }
    void check(std::size_t s, std::size_t a) const;
    void draw_into(std::size_t s, std::size_t a, Rng& rng, std::span<double> out) const;

    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    numvec prior_;
    numvec alpha_;
};

/// Functional form of DirichletPosterior::record: returns the updated posterior.
DirichletPosterior record_transition(DirichletPosterior post, std::size_t s, std::size_t a, std::size_t next);

}  // namespace plauset
