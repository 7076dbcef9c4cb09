#include "plauset/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plauset {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fixed(double x, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` ticks over [0, hi].
double tick_step(double hi, int target) {
    if (!(hi > 0.0)) return 1.0;
    const double raw = hi / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_records_csv(std::ostream& out, const std::vector<AgentOutcome>& outcomes) {
    out << "agent,run,episode,episodic_regret,cumulative_regret,predicted_return,realized_return\n";
    for (const auto& o : outcomes)
        for (const auto& r : o.records)
            out << o.name << ',' << r.run << ',' << r.episode << ',' << format_double(r.episodic_regret) << ','
                << format_double(r.cumulative_regret) << ',' << format_double(r.predicted_return) << ','
                << format_double(r.realized_return) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<AgentOutcome>& outcomes) {
    out << "agent,episode,mean_cumulative,worst_cumulative\n";
    for (const auto& o : outcomes)
        for (std::size_t l = 0; l < o.curve.mean_cumulative.size(); ++l)
            out << o.name << ',' << (l + 1) << ',' << format_double(o.curve.mean_cumulative[l]) << ','
                << format_double(o.curve.worst_cumulative[l]) << '\n';
}

std::string regret_chart_svg(const std::vector<AgentOutcome>& outcomes, CurveKind kind) {
    constexpr double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 55;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    std::size_t episodes = 1;
    double y_max = 0.0;
    for (const auto& o : outcomes) {
        const auto& ys = kind == CurveKind::average_case ? o.curve.mean_cumulative : o.curve.worst_cumulative;
        episodes = std::max(episodes, ys.size());
        for (double y : ys) y_max = std::max(y_max, y);
    }
    const double y_step = tick_step(y_max, 5);
    const double y_top = y_max > 0.0 ? std::ceil(y_max / y_step) * y_step : 1.0;
    const double x_span = episodes > 1 ? static_cast<double>(episodes - 1) : 1.0;
    auto px = [&](double episode) { return left + (episode - 1.0) / x_span * plot_w; };
    auto py = [&](double y) { return top + plot_h - y / y_top * plot_h; };

    const std::string title = kind == CurveKind::average_case ? "Average-case cumulative regret"
                                                              : "Worst-case cumulative regret";
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";

    // axes and ticks
    svg << "<g stroke=\"black\" fill=\"none\">\n"
        << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\"/>\n"
        << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n"
        << "</g>\n";
    for (double y = 0.0; y <= y_top + 1e-9 * y_top; y += y_step) {
        svg << "<line x1=\"" << left - 4 << "\" y1=\"" << fixed(py(y)) << "\" x2=\"" << left << "\" y2=\""
            << fixed(py(y)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << left - 7 << "\" y=\"" << fixed(py(y) + 4) << "\" text-anchor=\"end\">" << fixed(y, 3)
            << "</text>\n";
    }
    const double x_step = tick_step(static_cast<double>(episodes), 5);
    for (double e = x_step; e <= static_cast<double>(episodes) + 1e-9; e += x_step) {
        svg << "<line x1=\"" << fixed(px(e)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fixed(px(e)) << "\" y2=\""
            << top + plot_h + 4 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed(px(e)) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
            << static_cast<long long>(e) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">episode</text>\n"
        << "<text x=\"18\" y=\"" << fixed(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << fixed(top + plot_h / 2) << ")\">cumulative regret</text>\n";

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        const auto& ys = kind == CurveKind::average_case ? o.curve.mean_cumulative : o.curve.worst_cumulative;
        const char* color = kPalette[i % kPalette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t l = 0; l < ys.size(); ++l)
            svg << (l ? " " : "") << fixed(px(static_cast<double>(l + 1))) << ',' << fixed(py(ys[l]));
        svg << "\"/>\n";
        const double ly = top + 10 + 18 * static_cast<double>(i);
        svg << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << left + plot_w + 46 << "\" y=\"" << ly + 4 << "\">" << escape_xml(o.name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_outputs(const std::filesystem::path& dir, const std::vector<AgentOutcome>& outcomes, bool emit_plots) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    std::ostringstream records, summary;
    write_records_csv(records, outcomes);
    write_summary_csv(summary, outcomes);
    write_file(dir / "records.csv", records.str());
    write_file(dir / "summary.csv", summary.str());
    if (emit_plots) {
        write_file(dir / "average_case.svg", regret_chart_svg(outcomes, CurveKind::average_case));
        write_file(dir / "worst_case.svg", regret_chart_svg(outcomes, CurveKind::worst_case));
    }
}

}  // namespace plauset
