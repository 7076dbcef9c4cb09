#pragma once

#include "plauset/agents.hpp"
#include "plauset/domains.hpp"
#include "plauset/harness.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plauset {

/// Malformed or invalid experiment configuration. line() is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct ExperimentConfig {
    DomainSpec domain;
    std::vector<AgentSpec> agents;
    std::size_t episodes = 100;
    std::size_t runs = 100;
    std::optional<std::size_t> horizon;
    double delta = 0.05;
    std::size_t posterior_samples = 1000;
    Direction direction = Direction::optimistic;
    std::size_t max_iterations = 20;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir = "results";
    bool emit_plots = true;

    /// The domain with the horizon override applied.
    TabularMdp make_mdp() const;
    ExperimentSettings settings() const;
};

/**
 * Flat `key = value` format; `#` starts a comment, blank lines are ignored.
 *
 *   domain = riverswim            # or single_state
 *   agents = psrl, ofvf, bayesucrl
 *   episodes = 100
 *   runs = 100
 *   horizon = 20                  # optional domain horizon override
 *   delta = 0.05
 *   posterior_samples = 1000
 *   direction = optimistic        # OFVF only; or pessimistic
 *   max_iterations = 20           # OFVF only
 *   seed = 0
 *   output_dir = results
 *   emit_plots = true
 *   domain.p_right = 0.3          # any domain parameter
 *
 * Unknown keys, repeated keys and out-of-range values are errors.
 */
ExperimentConfig parse_config_text(const std::string& text);

/// Reads and parses a config file; unreadable files raise ConfigError.
ExperimentConfig parse_config(const std::filesystem::path& path);

}  // namespace plauset
