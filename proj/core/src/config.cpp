#include "plauset/config.hpp"

#include "text_util.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace plauset {

namespace {

bool parse_bool(std::string_view text) {
    const auto v = detail::lower(detail::trim(text));
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text) {
    const auto v = detail::lower(detail::trim(text));
    if (v == "optimistic") return Direction::optimistic;
    if (v == "pessimistic") return Direction::pessimistic;
    throw std::invalid_argument("direction must be optimistic or pessimistic");
}

std::size_t positive(std::string_view text, const char* what) {
    const auto v = detail::parse_unsigned(text, what);
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be at least 1");
    return static_cast<std::size_t>(v);
}

}  // namespace

TabularMdp ExperimentConfig::make_mdp() const {
    DomainSpec spec = domain;
    if (horizon) spec.overrides["horizon"] = std::to_string(*horizon);
    return make_domain(spec);
}

ExperimentSettings ExperimentConfig::settings() const {
    ExperimentSettings s;
    s.episodes = episodes;
    s.runs = runs;
    s.seed = seed;
    return s;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::vector<AgentKind> kinds{AgentKind::ofvf, AgentKind::bayes_ucrl, AgentKind::psrl};
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key = detail::lower(detail::trim(line.substr(0, eq)));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no);
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line_no);

        try {
            if (key == "domain") cfg.domain.kind = parse_domain_kind(value);
            else if (key.rfind("domain.", 0) == 0) cfg.domain.overrides[key.substr(7)] = std::string(value);
            else if (key == "agents") {
                kinds.clear();
                for (const auto& item : detail::split_list(value)) kinds.push_back(parse_agent_kind(item));
                if (kinds.empty()) throw std::invalid_argument("agents list is empty");
            } else if (key == "episodes") cfg.episodes = positive(value, "episodes");
            else if (key == "runs") cfg.runs = positive(value, "runs");
            else if (key == "horizon") cfg.horizon = positive(value, "horizon");
            else if (key == "delta") {
                cfg.delta = detail::parse_double(value, "delta");
                if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw std::invalid_argument("delta out of (0,1)");
            } else if (key == "posterior_samples") cfg.posterior_samples = positive(value, "posterior_samples");
            else if (key == "direction") cfg.direction = parse_direction(value);
            else if (key == "max_iterations") cfg.max_iterations = positive(value, "max_iterations");
            else if (key == "seed") cfg.seed = detail::parse_unsigned(value, "seed");
            else if (key == "output_dir") cfg.output_dir = std::string(value);
            else if (key == "emit_plots") cfg.emit_plots = parse_bool(value);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(e.what(), line_no);
        }
    }

    for (auto kind : kinds) {
        AgentSpec spec;
        spec.kind = kind;
        spec.delta = cfg.delta;
        spec.posterior_samples = cfg.posterior_samples;
        spec.direction = cfg.direction;
        spec.caps.max_iterations = cfg.max_iterations;
        spec.caps.posterior_samples = cfg.posterior_samples;
        cfg.agents.push_back(spec);
    }

    // surface domain parameter errors before any simulation
    try {
        const auto mdp = cfg.make_mdp();
        if (auto report = validate(mdp); !report.ok()) throw std::invalid_argument(report.describe());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid domain: ") + e.what());
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace plauset
