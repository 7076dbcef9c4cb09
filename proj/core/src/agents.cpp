#include "plauset/agents.hpp"

#include "text_util.hpp"

#include <stdexcept>

namespace plauset {

std::string_view to_string(AgentKind kind) {
    switch (kind) {
    case AgentKind::ofvf: return "ofvf";
    case AgentKind::bayes_ucrl: return "bayesucrl";
    case AgentKind::hoeffding_ucrl: return "hoeffding";
    case AgentKind::psrl: return "psrl";
    case AgentKind::oracle: return "oracle";
    }
    return "unknown";
}

AgentKind parse_agent_kind(std::string_view name) {
    const auto n = detail::lower(detail::trim(name));
    if (n == "ofvf") return AgentKind::ofvf;
    if (n == "bayesucrl" || n == "bayes_ucrl") return AgentKind::bayes_ucrl;
    if (n == "hoeffding" || n == "hoeffding_ucrl" || n == "ucrl") return AgentKind::hoeffding_ucrl;
    if (n == "psrl") return AgentKind::psrl;
    if (n == "oracle") return AgentKind::oracle;
    throw std::invalid_argument("unknown agent '" + std::string(name) + "'");
}

void check_agent(const AgentSpec& spec) {
    if (!(spec.delta > 0.0 && spec.delta < 1.0)) throw std::invalid_argument("delta out of (0,1)");
    if (spec.posterior_samples < 1) throw std::invalid_argument("posterior_samples must be at least 1");
    if (spec.kind == AgentKind::ofvf && spec.caps.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
}

PlausibilityCollection bayes_ucrl_sets(const DirichletPosterior& post, std::size_t episode,
                                       std::size_t posterior_samples, Rng& rng) {
    const std::size_t S = post.num_states(), A = post.num_actions();
    PlausibilityCollection sets(S, A);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            auto center = post.mean(s, a);
            const auto batch = post.sample_transitions(s, a, posterior_samples, rng);
            const double radius = bayes_ucrl_radius(batch, center, episode, S * A);
            sets.at(s, a) = L1Ball{std::move(center), radius};
        }
    return sets;
}

PlausibilityCollection hoeffding_sets(const DirichletPosterior& post, double delta) {
    const std::size_t S = post.num_states(), A = post.num_actions();
    PlausibilityCollection sets(S, A);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a)
            sets.at(s, a) = L1Ball{post.mean(s, a), hoeffding_radius(post.count(s, a), S, A, delta)};
    return sets;
}

EpisodePlan plan_episode(const AgentSpec& spec, const DirichletPosterior& post, const KnownModel& known,
                         std::size_t episode, Rng& rng, const TabularMdp* truth) {
    check_agent(spec);
    if (episode == 0) throw std::invalid_argument("episodes are numbered from 1");

    auto finish = [&](Solution sol) {
        EpisodePlan plan;
        plan.predicted_return = initial_value(known, sol.values);
        plan.policy = std::move(sol.policy);
        return plan;
    };

    switch (spec.kind) {
    case AgentKind::ofvf: {
        OfvfCaps caps = spec.caps;
        caps.posterior_samples = spec.posterior_samples;
        auto result = ofvf_construct(post, known, spec.delta, spec.direction, caps, rng);
        return EpisodePlan{std::move(result.policy), result.optimistic_return};
    }
    case AgentKind::bayes_ucrl:
        return finish(optimistic_value_iteration(known, bayes_ucrl_sets(post, episode, spec.posterior_samples, rng)));
    case AgentKind::hoeffding_ucrl:
        return finish(optimistic_value_iteration(known, hoeffding_sets(post, spec.delta)));
    case AgentKind::psrl:
        return finish(value_iteration(post.sample_mdp(known, rng)));
    case AgentKind::oracle:
        if (truth == nullptr) throw std::invalid_argument("the oracle agent needs the true MDP");
        return finish(value_iteration(*truth));
    }
    throw std::invalid_argument("unknown agent kind");
}

}  // namespace plauset
