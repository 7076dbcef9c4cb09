#pragma once

#include "plauset/harness.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace plauset {

/// printf-style "%.17g", which round-trips every double.
std::string format_double(double x);

/// Header: agent,run,episode,episodic_regret,cumulative_regret,predicted_return,realized_return
void write_records_csv(std::ostream& out, const std::vector<AgentOutcome>& outcomes);

/// Header: agent,episode,mean_cumulative,worst_cumulative
void write_summary_csv(std::ostream& out, const std::vector<AgentOutcome>& outcomes);

enum class CurveKind { average_case, worst_case };

/// Line chart of cumulative regret against episode, one polyline per agent.
std::string regret_chart_svg(const std::vector<AgentOutcome>& outcomes, CurveKind kind);

/**
 * Writes records.csv and summary.csv, plus average_case.svg and
 * worst_case.svg when plots are requested. Creates the directory if needed;
 * throws std::runtime_error when a file cannot be written.
 */
void write_outputs(const std::filesystem::path& dir, const std::vector<AgentOutcome>& outcomes, bool emit_plots);

}  // namespace plauset
