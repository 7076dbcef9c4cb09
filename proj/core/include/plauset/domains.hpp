#pragma once

#include "plauset/mdp.hpp"

#include <map>
#include <string>
#include <string_view>

namespace plauset {

enum class DomainKind { single_state, riverswim };

/// A benchmark domain with optional parameter overrides (values as text, lists comma-separated).
struct DomainSpec {
    DomainKind kind = DomainKind::riverswim;
    std::map<std::string, std::string> overrides;
};

std::string_view to_string(DomainKind kind);

/// Accepts "riverswim" and "single_state" (case-insensitive, '-' allowed for '_').
DomainKind parse_domain_kind(std::string_view name);

/**
 * One decision state (index 0) and three absorbing terminals (1..3) reached
 * in a single step. Terminal values are paid as the reward of the transition
 * into each terminal.
 *
 * Overrides: horizon, terminal_values, action1, action2, action3 (rows over
 * the terminals).
 */
TabularMdp single_state_instance(const std::map<std::string, std::string>& overrides = {});

/**
 * Chain of states with LEFT (action 0) moving deterministically towards
 * state 0 and RIGHT (action 1) swimming against the current.
 *
 * Overrides: states, horizon, p_right, p_stay, reward_left, reward_right.
 */
TabularMdp riverswim_instance(const std::map<std::string, std::string>& overrides = {});

TabularMdp make_domain(const DomainSpec& spec);

/// Human-readable listing of the domains and their default parameters.
std::string list_domains();

}  // namespace plauset
