#pragma once

#include "plauset/agents.hpp"
#include "plauset/mdp.hpp"
#include "plauset/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace plauset {

struct Step {
    std::size_t state = 0;
    std::size_t action = 0;
    std::size_t next = 0;
    double reward = 0.0;
};

struct Trajectory {
    std::vector<Step> steps;
    double realized_return = 0.0;
};

/// Draws s0 from p0 and follows the stage policy for H steps on the true kernel.
Trajectory simulate_episode(const TabularMdp& mdp, const Policy& policy, Rng& rng);

/// Exact regret of a policy against the optimum of one MDP, with V* computed once.
class RegretOracle {
public:
    explicit RegretOracle(const TabularMdp& truth);

    double optimal_return() const noexcept { return optimal_return_; }
    const Solution& optimum() const noexcept { return optimum_; }

    /// p0^T (V* - V^pi) at stage 0; roundoff below zero is clamped.
    double regret(const Policy& policy) const;

private:
    const TabularMdp* truth_;
    Solution optimum_;
    double optimal_return_ = 0.0;
};

double episode_regret(const TabularMdp& truth, const Policy& policy);

struct EpisodeRecord {
    std::size_t run = 0;
    std::size_t episode = 0;
    double episodic_regret = 0.0;
    double cumulative_regret = 0.0;
    double predicted_return = 0.0;
    double realized_return = 0.0;
};

/// Cumulative regret per episode: per run, mean over runs and maximum over runs.
struct RegretCurve {
    std::vector<double> mean_cumulative;
    std::vector<double> worst_cumulative;
    std::vector<std::vector<double>> per_run;
};

/// Aggregates per-run cumulative curves; the mean sums runs in index order.
RegretCurve aggregate(const std::vector<std::vector<double>>& per_run);

struct AgentOutcome {
    AgentSpec spec;
    std::string name;
    /// Ordered by run, then episode.
    std::vector<EpisodeRecord> records;
    RegretCurve curve;
};

struct ExperimentSettings {
    std::size_t episodes = 100;
    std::size_t runs = 100;
    std::uint64_t seed = 0;
    /// 0 reads PLAUSET_THREADS, falling back to the hardware concurrency.
    std::size_t threads = 0;
};

/// Thread count from PLAUSET_THREADS, or the hardware concurrency when unset or invalid.
std::size_t default_thread_count();

/**
 * Episodic learning loop for every agent and run. Each run starts from the
 * uniform prior; per episode the agent plans, the policy is rolled out on the
 * true MDP, every observed transition updates the posterior, and the exact
 * regret is recorded. Results do not depend on the thread count.
 */
std::vector<AgentOutcome> run_experiment(const TabularMdp& truth, const std::vector<AgentSpec>& agents,
                                         const ExperimentSettings& settings);

}  // namespace plauset
