#include "plauset/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace plauset {

namespace {

std::size_t draw(std::span<const double> dist, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] <= 0.0) continue;
        acc += dist[i];
        last = i;
        if (u < acc) return i;
    }
    return last;
}

std::vector<EpisodeRecord> run_single(const TabularMdp& truth, const RegretOracle& oracle, const AgentSpec& spec,
                                      std::size_t run, const ExperimentSettings& settings) {
    auto post = DirichletPosterior::uniform_prior(truth.num_states(), truth.num_actions());
    std::vector<EpisodeRecord> records;
    records.reserve(settings.episodes);
    double cumulative = 0.0;
    for (std::size_t l = 1; l <= settings.episodes; ++l) {
        Rng plan_rng = substream(settings.seed, run, l, StreamPurpose::planning);
        Rng sim_rng = substream(settings.seed, run, l, StreamPurpose::simulation);
        const auto plan = plan_episode(spec, post, truth.known(), l, plan_rng, &truth);
        const auto trajectory = simulate_episode(truth, plan.policy, sim_rng);
        for (const auto& step : trajectory.steps) post.record(step.state, step.action, step.next);

        EpisodeRecord rec;
        rec.run = run;
        rec.episode = l;
        rec.episodic_regret = oracle.regret(plan.policy);
        cumulative += rec.episodic_regret;
        rec.cumulative_regret = cumulative;
        rec.predicted_return = plan.predicted_return;
        rec.realized_return = trajectory.realized_return;
        records.push_back(rec);
    }
    return records;
}

}  // namespace

Trajectory simulate_episode(const TabularMdp& mdp, const Policy& policy, Rng& rng) {
    if (policy.horizon() != mdp.horizon() || policy.num_states() != mdp.num_states() ||
        !policy.well_formed(mdp.num_actions()))
        throw std::invalid_argument("policy does not match the MDP");
    Trajectory out;
    out.steps.reserve(mdp.horizon());
    std::size_t s = draw(mdp.initial_dist(), rng);
    for (std::size_t h = 0; h < mdp.horizon(); ++h) {
        const std::size_t a = policy(h, s);
        const std::size_t next = draw(mdp.transition(s, a), rng);
        const double r = mdp.reward(s, a)[next];
        out.steps.push_back({s, a, next, r});
        out.realized_return += r;
        s = next;
    }
    out.realized_return += mdp.terminal_values()[s];
    return out;
}

RegretOracle::RegretOracle(const TabularMdp& truth)
    : truth_(&truth), optimum_(value_iteration(truth)), optimal_return_(initial_value(truth.known(), optimum_.values)) {}

double RegretOracle::regret(const Policy& policy) const {
    const double r = optimal_return_ - expected_return(*truth_, policy);
    // V* is a pointwise maximum, so anything below zero is roundoff
    return r < 0.0 && r > -1e-9 ? 0.0 : r;
}

double episode_regret(const TabularMdp& truth, const Policy& policy) { return RegretOracle(truth).regret(policy); }

RegretCurve aggregate(const std::vector<std::vector<double>>& per_run) {
    RegretCurve curve;
    curve.per_run = per_run;
    if (per_run.empty()) return curve;
    const std::size_t L = per_run.front().size();
    curve.mean_cumulative.assign(L, 0.0);
    curve.worst_cumulative.assign(L, -std::numeric_limits<double>::infinity());
    for (const auto& run : per_run) {
        if (run.size() != L) throw std::invalid_argument("runs have different episode counts");
        for (std::size_t l = 0; l < L; ++l) {
            curve.mean_cumulative[l] += run[l];
            curve.worst_cumulative[l] = std::max(curve.worst_cumulative[l], run[l]);
        }
    }
    for (auto& m : curve.mean_cumulative) m /= static_cast<double>(per_run.size());
    return curve;
}

std::size_t default_thread_count() {
    if (const char* env = std::getenv("PLAUSET_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<AgentOutcome> run_experiment(const TabularMdp& truth, const std::vector<AgentSpec>& agents,
                                         const ExperimentSettings& settings) {
    if (settings.episodes < 1) throw std::invalid_argument("episodes must be at least 1");
    if (settings.runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (agents.empty()) throw std::invalid_argument("no agents to run");
    for (const auto& spec : agents) check_agent(spec);
    if (auto report = validate(truth); !report.ok()) throw std::invalid_argument("invalid MDP:\n" + report.describe());

    const RegretOracle oracle(truth);
    const std::size_t jobs = agents.size() * settings.runs;
    std::vector<std::vector<EpisodeRecord>> results(jobs);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t job = next.fetch_add(1);
            if (job >= jobs) return;
            try {
                results[job] = run_single(truth, oracle, agents[job / settings.runs], job % settings.runs, settings);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(jobs);
            }
        }
    };
    const std::size_t threads = std::min(jobs, settings.threads > 0 ? settings.threads : default_thread_count());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<AgentOutcome> outcomes;
    outcomes.reserve(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        AgentOutcome out;
        out.spec = agents[i];
        out.name = std::string(to_string(agents[i].kind));
        std::vector<std::vector<double>> per_run;
        for (std::size_t r = 0; r < settings.runs; ++r) {
            auto& recs = results[i * settings.runs + r];
            std::vector<double> cumulative;
            cumulative.reserve(recs.size());
            for (const auto& rec : recs) cumulative.push_back(rec.cumulative_regret);
            per_run.push_back(std::move(cumulative));
            out.records.insert(out.records.end(), recs.begin(), recs.end());
        }
        out.curve = aggregate(per_run);
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

}  // namespace plauset
