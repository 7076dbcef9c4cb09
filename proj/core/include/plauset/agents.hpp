#pragma once

#include "plauset/ambiguity.hpp"
#include "plauset/mdp.hpp"
#include "plauset/ofvf.hpp"
#include "plauset/posterior.hpp"
#include "plauset/rng.hpp"

#include <string>
#include <string_view>

namespace plauset {

enum class AgentKind { ofvf, bayes_ucrl, hoeffding_ucrl, psrl, oracle };

struct AgentSpec {
    AgentKind kind = AgentKind::ofvf;
    double delta = 0.05;
    std::size_t posterior_samples = 1000;
    /// OFVF only.
    Direction direction = Direction::optimistic;
    /// OFVF only; the sample count is taken from posterior_samples.
    OfvfCaps caps{};
};

/// Canonical lowercase name: ofvf, bayesucrl, hoeffding, psrl, oracle.
std::string_view to_string(AgentKind kind);

/// Accepts the canonical names plus bayes_ucrl, hoeffding_ucrl and ucrl.
AgentKind parse_agent_kind(std::string_view name);

/// Throws std::invalid_argument unless delta is in (0,1) and posterior_samples >= 1.
void check_agent(const AgentSpec& spec);

struct EpisodePlan {
    Policy policy;
    /// p0^T V_0 of the model the agent planned with.
    double predicted_return = 0.0;
};

/**
 * Plans the policy for episode `episode` (numbered from 1) from the current
 * posterior. Agents see only the known model; `truth` is read by the oracle
 * agent alone and must be non-null for it.
 */
EpisodePlan plan_episode(const AgentSpec& spec, const DirichletPosterior& post, const KnownModel& known,
                         std::size_t episode, Rng& rng, const TabularMdp* truth = nullptr);

/// Posterior-mean balls with BayesUCRL radii; budget split over all state-action pairs.
PlausibilityCollection bayes_ucrl_sets(const DirichletPosterior& post, std::size_t episode,
                                       std::size_t posterior_samples, Rng& rng);

/// Posterior-mean balls with Hoeffding radii from the observed counts.
PlausibilityCollection hoeffding_sets(const DirichletPosterior& post, double delta);

}  // namespace plauset
