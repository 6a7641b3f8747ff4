// report.hpp
// Run records (JSON lines) and minimal SVG line plots for the CLI.

#pragma once

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lidqsd/sweeps.hpp"

namespace lidqsd {

struct RunRecord {
    std::string command;
    std::map<std::string, double> params;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    std::optional<std::uint64_t> seed;
    std::string timestamp;

    RunRecord(std::string command_, std::map<std::string, double> params_)
        : command(std::move(command_)), params(std::move(params_)) {}

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["params"] = params;
        j["outputs"] = outputs;
        j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
        j["timestamp"] = timestamp;
        return j;
    }
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
inline std::string iso8601_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Appends one line to `path`. Returns false if the file cannot be opened.
inline bool append_run_record(const std::string& path, const RunRecord& rec) {
    std::ofstream os(path, std::ios::app);
    if (!os) return false;
    os << rec.to_json().dump() << '\n';
    return static_cast<bool>(os);
}

struct PlotSeries {
    std::string name;
    std::vector<double> y;  // NaN marks a gap
};

/// One polyline per series over a shared x axis, auto-scaled.
inline void write_svg_plot(std::ostream& os, const std::string& title, const std::string& x_label,
                           const std::vector<double>& x, const std::vector<PlotSeries>& series) {
    constexpr double W = 640, H = 400, L = 60, R = 20, T = 40, B = 50;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
    double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
    double ymin = 0.0, ymax = 1.0;
    for (const auto& s : series)
        for (double v : s.y)
            if (std::isfinite(v)) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    if (xmax <= xmin) xmax = xmin + 1.0;
    auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(ymin) << "\" text-anchor=\"end\" font-size=\"10\">"
       << format_number(ymin) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(ymax) << "\" text-anchor=\"end\" font-size=\"10\">"
       << format_number(ymax) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = colors[k % 5];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
                   << points << "\"/>\n";
            }
            points.clear();
        };
        for (std::size_t i = 0; i < x.size() && i < series[k].y.size(); ++i) {
            const double v = series[k].y[i];
            if (!std::isfinite(v)) {
                flush();
                continue;
            }
            points += format_number(px(x[i])) + "," + format_number(py(v)) + " ";
        }
        flush();
        os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (k + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
           << color << "\">" << series[k].name << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace lidqsd
