// Command-line front end: run regret experiments from a config file and list
// the benchmark domains.

#include "plauset/config.hpp"
#include "plauset/domains.hpp"
#include "plauset/harness.hpp"
#include "plauset/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

namespace {

int run_command(const std::string& config_path, const std::optional<std::string>& output_dir,
                const std::optional<std::uint64_t>& seed, bool no_plots) {
    auto config = plauset::parse_config(config_path);
    if (output_dir) config.output_dir = *output_dir;
    if (seed) config.seed = *seed;
    if (no_plots) config.emit_plots = false;

    const auto mdp = config.make_mdp();
    const auto start = std::chrono::steady_clock::now();
    const auto outcomes = plauset::run_experiment(mdp, config.agents, config.settings());
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    plauset::write_outputs(config.output_dir, outcomes, config.emit_plots);

    std::cout << "domain " << plauset::to_string(config.domain.kind) << ", " << config.episodes << " episodes x "
              << config.runs << " runs, seed " << config.seed << " (" << seconds << " s)\n";
    for (const auto& o : outcomes) {
        std::cout << "  " << o.name << ": mean cumulative regret " << o.curve.mean_cumulative.back()
                  << ", worst " << o.curve.worst_cumulative.back() << '\n';
    }
    std::cout << "wrote " << config.output_dir.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plausibility-set exploration experiments on tabular finite-horizon MDPs", "plauset"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    bool no_plots = false;

    auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
    run->add_option("config", config_path, "Path to the key = value config file")->required();
    run->add_option("--output-dir", output_dir, "Directory for records.csv, summary.csv and charts");
    run->add_option("--seed", seed, "Master seed (overrides the config)");
    run->add_flag("--no-plots", no_plots, "Skip the SVG charts");

    app.add_subcommand("domains", "List the benchmark domains and their default parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
    }

    try {
        if (app.got_subcommand("domains")) {
            std::cout << plauset::list_domains();
            return 0;
        }
        return run_command(config_path, output_dir, seed, no_plots);
    } catch (const std::exception& e) {
        std::cerr << "plauset: " << e.what() << '\n';
        return 1;
    }
}
