#include "plauset/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plauset {

namespace {

void init_terminal(const KnownModel& known, StageValues& values) {
    if (known.terminal_values.empty()) return;
    auto last = values.stage(known.horizon);
    std::copy(known.terminal_values.begin(), known.terminal_values.end(), last.begin());
}

void check_policy(const KnownModel& known, const Policy& policy) {
    if (policy.horizon() != known.horizon || policy.num_states() != known.num_states) {
        std::ostringstream msg;
        msg << "policy dimensions (H=" << policy.horizon() << ", S=" << policy.num_states()
            << ") do not match the MDP (H=" << known.horizon << ", S=" << known.num_states << ")";
        throw std::invalid_argument(msg.str());
    }
    if (!policy.well_formed(known.num_actions)) throw std::invalid_argument("policy contains an invalid action index");
}

}  // namespace

void KnownModel::check_shape() const {
    if (num_states == 0 || num_actions == 0) throw std::invalid_argument("MDP needs at least one state and action");
    if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
    if (rewards.size() != num_states * num_actions * num_states)
        throw std::invalid_argument("reward array has the wrong size");
    if (initial_dist.size() != num_states) throw std::invalid_argument("initial distribution has the wrong size");
    if (!terminal_values.empty() && terminal_values.size() != num_states)
        throw std::invalid_argument("terminal values have the wrong size");
    if (!(discount >= 0.0 && discount <= 1.0)) throw std::invalid_argument("discount must lie in [0,1]");
}

TabularMdp::TabularMdp(KnownModel known, numvec transitions)
    : known_(std::move(known)), transitions_(std::move(transitions)) {
    known_.check_shape();
    if (known_.terminal_values.empty()) known_.terminal_values.assign(known_.num_states, 0.0);
    if (transitions_.size() != known_.rewards.size())
        throw std::invalid_argument("transition array has the wrong size");
}

TabularMdp TabularMdp::with_transitions(numvec transitions) const {
    return TabularMdp(known_, std::move(transitions));
}

bool Policy::well_formed(std::size_t num_actions) const {
    if (actions_.size() != horizon_ * num_states_) return false;
    for (auto a : actions_)
        if (a >= num_actions) return false;
    return true;
}

std::string ValidationReport::describe() const {
    std::ostringstream out;
    for (const auto& v : violations) out << v.message << " at (" << v.state << "," << v.action << ")\n";
    return out.str();
}

bool on_simplex(std::span<const double> p, double tolerance) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= -tolerance)) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tolerance;
}

ValidationReport validate(const TabularMdp& mdp) {
    ValidationReport report;
    const std::size_t S = mdp.num_states(), A = mdp.num_actions();
    for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t a = 0; a < A; ++a) {
            auto row = mdp.transition(s, a);
            double sum = 0.0;
            bool negative = false, finite = true;
            for (double x : row) {
                if (!std::isfinite(x)) finite = false;
                if (x < 0.0) negative = true;
                sum += x;
            }
            if (!finite) {
                report.violations.push_back({s, a, "non-finite transition probability"});
                continue;
            }
            if (negative) report.violations.push_back({s, a, "negative mass"});
            if (std::abs(sum - 1.0) > kSimplexTolerance) {
                std::ostringstream msg;
                msg << "row sum " << sum;
                report.violations.push_back({s, a, msg.str()});
            }
            for (double r : mdp.reward(s, a)) {
                if (!std::isfinite(r)) {
                    report.violations.push_back({s, a, "non-finite reward"});
                    break;
                }
            }
        }
    }
    double p0 = 0.0;
    bool p0_negative = false;
    for (double x : mdp.initial_dist()) {
        p0 += x;
        p0_negative = p0_negative || x < 0.0;
    }
    if (p0_negative || std::abs(p0 - 1.0) > kSimplexTolerance) {
        std::ostringstream msg;
        msg << "initial distribution sums to " << p0;
        report.violations.push_back({0, 0, msg.str()});
    }
    return report;
}

double backup(std::span<const double> p, std::span<const double> r, std::span<const double> next,
              double discount) {
    double value = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) value += p[i] * (r[i] + discount * next[i]);
    return value;
}

StageValues policy_evaluation(const TabularMdp& mdp, const Policy& policy) {
    check_policy(mdp.known(), policy);
    const std::size_t H = mdp.horizon(), S = mdp.num_states();
    StageValues values(H, S);
    init_terminal(mdp.known(), values);
    for (std::size_t h = H; h-- > 0;) {
        auto next = values.stage(h + 1);
        for (std::size_t s = 0; s < S; ++s) {
            const std::size_t a = policy(h, s);
            values(h, s) = backup(mdp.transition(s, a), mdp.reward(s, a), next, mdp.discount());
        }
    }
    return values;
}

Solution value_iteration(const TabularMdp& mdp) {
    const std::size_t H = mdp.horizon(), S = mdp.num_states(), A = mdp.num_actions();
    Solution sol{StageValues(H, S), Policy(H, S)};
    init_terminal(mdp.known(), sol.values);
    for (std::size_t h = H; h-- > 0;) {
        auto next = sol.values.stage(h + 1);
        for (std::size_t s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_action = 0;
            for (std::size_t a = 0; a < A; ++a) {
                const double q = backup(mdp.transition(s, a), mdp.reward(s, a), next, mdp.discount());
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

double initial_value(const KnownModel& known, const StageValues& values) {
    auto v0 = values.stage(0);
    return std::inner_product(known.initial_dist.begin(), known.initial_dist.end(), v0.begin(), 0.0);
}

double expected_return(const TabularMdp& mdp, const Policy& policy) {
    return initial_value(mdp.known(), policy_evaluation(mdp, policy));
}

}  // namespace plauset
