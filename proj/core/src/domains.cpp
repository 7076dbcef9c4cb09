#include "plauset/domains.hpp"

#include "text_util.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace plauset {

namespace {

class Overrides {
public:
    Overrides(const std::map<std::string, std::string>& values, std::string_view domain) : values_(values), domain_(domain) {}

    double number(const std::string& key, double fallback) {
        used_.push_back(key);
        auto it = values_.find(key);
        return it == values_.end() ? fallback : detail::parse_double(it->second, key);
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        used_.push_back(key);
        auto it = values_.find(key);
        return it == values_.end() ? fallback : static_cast<std::size_t>(detail::parse_unsigned(it->second, key));
    }

    numvec list(const std::string& key, numvec fallback) {
        used_.push_back(key);
        auto it = values_.find(key);
        return it == values_.end() ? fallback : detail::parse_doubles(it->second, key);
    }

    // Unknown keys are configuration errors.
    void finish() const {
        for (const auto& [key, value] : values_) {
            (void)value;
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw std::invalid_argument("unknown " + std::string(domain_) + " parameter '" + key + "'");
        }
    }

private:
    const std::map<std::string, std::string>& values_;
    std::string_view domain_;
    std::vector<std::string> used_;
};

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

std::string_view to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::single_state: return "single_state";
    case DomainKind::riverswim: return "riverswim";
    }
    return "unknown";
}

DomainKind parse_domain_kind(std::string_view name) {
    auto n = detail::lower(detail::trim(name));
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "riverswim") return DomainKind::riverswim;
    if (n == "single_state" || n == "singlestate") return DomainKind::single_state;
    throw std::invalid_argument("unknown domain '" + std::string(name) + "'");
}

TabularMdp single_state_instance(const std::map<std::string, std::string>& overrides) {
    Overrides opt(overrides, "single_state");
    const std::size_t horizon = opt.count("horizon", 1);
    const numvec terminal = opt.list("terminal_values", {1.0, 2.0, 3.0});
    const std::vector<numvec> rows = {
        opt.list("action1", {0.6, 0.3, 0.1}),
        opt.list("action2", {0.3, 0.4, 0.3}),
        opt.list("action3", {0.1, 0.3, 0.6}),
    };
    opt.finish();

    const std::size_t T = terminal.size();
    const std::size_t S = T + 1, A = rows.size();
    if (T == 0) throw std::invalid_argument("single_state needs at least one terminal state");
    for (const auto& row : rows) {
        if (row.size() != T) throw std::invalid_argument("single_state action rows must have one entry per terminal");
        if (!on_simplex(row)) throw std::invalid_argument("single_state action rows must be probability vectors");
    }

    KnownModel known;
    known.num_states = S;
    known.num_actions = A;
    known.horizon = horizon;
    known.rewards.assign(S * A * S, 0.0);
    known.initial_dist.assign(S, 0.0);
    known.initial_dist[0] = 1.0;
    known.terminal_values.assign(S, 0.0);
    numvec kernel(S * A * S, 0.0);
    for (std::size_t a = 0; a < A; ++a)
        for (std::size_t t = 0; t < T; ++t) {
            kernel[a * S + 1 + t] = rows[a][t];
            known.rewards[a * S + 1 + t] = terminal[t];
        }
    for (std::size_t s = 1; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) kernel[(s * A + a) * S + s] = 1.0;
    return TabularMdp(std::move(known), std::move(kernel));
}

TabularMdp riverswim_instance(const std::map<std::string, std::string>& overrides) {
    Overrides opt(overrides, "riverswim");
    const std::size_t S = opt.count("states", 6);
    const std::size_t horizon = opt.count("horizon", 20);
    const double p_right = opt.number("p_right", 0.3);
    const double p_stay = opt.number("p_stay", 0.6);
    const double reward_left = opt.number("reward_left", 0.005);
    const double reward_right = opt.number("reward_right", 1.0);
    opt.finish();

    if (S < 2) throw std::invalid_argument("riverswim needs at least two states");
    require_probability(p_right, "p_right");
    require_probability(p_stay, "p_stay");
    const double p_back = 1.0 - p_right - p_stay;
    if (p_back < -kSimplexTolerance) throw std::invalid_argument("p_right + p_stay must not exceed 1");

    constexpr std::size_t left = 0, right = 1;
    const std::size_t A = 2;
    KnownModel known;
    known.num_states = S;
    known.num_actions = A;
    known.horizon = horizon;
    known.rewards.assign(S * A * S, 0.0);
    known.initial_dist.assign(S, 0.0);
    known.initial_dist[0] = 1.0;
    known.terminal_values.assign(S, 0.0);
    numvec kernel(S * A * S, 0.0);
    auto at = [&](numvec& arr, std::size_t s, std::size_t a, std::size_t next) -> double& {
        return arr[(s * A + a) * S + next];
    };

    for (std::size_t s = 0; s < S; ++s) {
        at(kernel, s, left, s == 0 ? 0 : s - 1) = 1.0;
        if (s == 0) {
            at(kernel, s, right, 1) = p_right;
            at(kernel, s, right, 0) = 1.0 - p_right;
        } else if (s == S - 1) {
            at(kernel, s, right, s) = p_right;
            at(kernel, s, right, s - 1) = 1.0 - p_right;
        } else {
            at(kernel, s, right, s + 1) = p_right;
            at(kernel, s, right, s) = p_stay;
            at(kernel, s, right, s - 1) = std::max(0.0, p_back);
        }
    }
    at(known.rewards, 0, left, 0) = reward_left;
    at(known.rewards, S - 1, right, S - 1) = reward_right;
    return TabularMdp(std::move(known), std::move(kernel));
}

TabularMdp make_domain(const DomainSpec& spec) {
    switch (spec.kind) {
    case DomainKind::single_state: return single_state_instance(spec.overrides);
    case DomainKind::riverswim: return riverswim_instance(spec.overrides);
    }
    throw std::invalid_argument("unknown domain");
}

std::string list_domains() {
    std::ostringstream out;
    out << "single_state  one decision state, three actions, three absorbing terminals (H = 1)\n"
        << "    horizon = 1\n"
        << "    terminal_values = 1, 2, 3\n"
        << "    action1 = 0.6, 0.3, 0.1\n"
        << "    action2 = 0.3, 0.4, 0.3\n"
        << "    action3 = 0.1, 0.3, 0.6\n"
        << "riverswim     chain MDP; LEFT is safe and nearly worthless, RIGHT swims against the current\n"
        << "    states = 6\n"
        << "    horizon = 20\n"
        << "    p_right = 0.3\n"
        << "    p_stay = 0.6\n"
        << "    reward_left = 0.005\n"
        << "    reward_right = 1\n";
    return out.str();
}

}  // namespace plauset
