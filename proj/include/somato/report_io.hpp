#pragma once

// Report serialization: CSV (one row per trial record), JSON summary
// (aggregates + scenario echo), and a dependency-light SVG line plot of the
// variable-error profile. Number formatting is fixed so identical reports
// serialize byte-identically.

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "somato/errors.hpp"
#include "somato/experiments.hpp"
#include "somato/version.hpp"

namespace somato {

namespace io_detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace io_detail

inline std::string to_csv(const ExperimentReport& rep) {
    using io_detail::fmt;
    std::string out =
        "scenario_id,task,variant,mode,probe,trial,"
        "truth_x,truth_y,truth_z,resp_x,resp_y,resp_z,err_x,err_y,err_z\n";
    for (const auto& r : rep.records) {
        out += rep.scenario_id;
        out += ',';
        out += to_string(rep.task);
        out += ',';
        out += to_string(r.variant);
        out += ',';
        out += to_string(rep.mode);
        out += ',';
        out += r.probe;
        out += ',';
        out += std::to_string(r.trial);
        for (const Vec3* v : {&r.truth, &r.response, &r.error}) {
            out += ',';
            out += fmt(v->x);
            out += ',';
            out += fmt(v->y);
            out += ',';
            out += fmt(v->z);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_summary_json(const ExperimentReport& rep) {
    nlohmann::json j;
    j["software"] = {{"name", "somato"}, {"version", kVersion}};
    nlohmann::json noise;
    noise["afferent_std_rad"] = rep.noise.afferent_std_rad;
    if (!rep.noise.afferent_std_overrides.empty())
        noise["afferent_std_overrides"] = rep.noise.afferent_std_overrides;
    noise["afferent_latency_ms"] = rep.noise.afferent_latency_ms;
    noise["weber_k"] = rep.noise.weber_k;
    noise["taxel_jitter_std_mm"] = rep.noise.taxel_jitter_std_mm;
    j["scenario"] = {{"id", rep.scenario_id},     {"task", to_string(rep.task)},
                     {"variant", to_string(rep.variant)}, {"mode", to_string(rep.mode)},
                     {"seed", rep.seed},          {"trials", rep.trials},
                     {"attenuation", rep.attenuation},    {"noise", noise}};
    j["record_count"] = rep.records.size();

    nlohmann::json aggs = nlohmann::json::array();
    for (const auto& a : rep.aggregates) {
        nlohmann::json entry;
        entry["probe"] = a.probe;
        entry["variant"] = to_string(a.variant);
        if (a.has_u) entry["along_u_mm"] = a.along_u;
        entry["constant_error_mm"] = {a.constant_error.x, a.constant_error.y, a.constant_error.z};
        entry["variable_error_mm"] = a.variable_error;
        entry["count"] = a.count;
        aggs.push_back(entry);
    }
    j["aggregates"] = aggs;

    if (!rep.paired_profile.empty()) {
        nlohmann::json prof = nlohmann::json::array();
        for (const auto& p : rep.paired_profile) {
            prof.push_back({{"probe", p.probe},
                            {"along_u_mm", p.along_u},
                            {"ve_single_mm", p.ve_single},
                            {"ve_triangulated_mm", p.ve_triangulated}});
        }
        j["paired_profile"] = prof;
    }

    j["summary"] = rep.summary;
    return j;
}

inline std::string to_summary_json_string(const ExperimentReport& rep) {
    return to_summary_json(rep).dump(2) + "\n";
}

namespace io_detail {

struct ProfileSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (u, ve), sorted by u
};

inline std::string svg_plot(const std::string& title, const std::vector<ProfileSeries>& series) {
    constexpr double width = 640.0, height = 400.0;
    constexpr double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double x_min = 0.0, x_max = 1.0, y_max = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [u, ve] : s.points) {
            if (first) {
                x_min = x_max = u;
                first = false;
            }
            x_min = std::min(x_min, u);
            x_max = std::max(x_max, u);
            y_max = std::max(y_max, ve);
        }
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= 0.0) y_max = 1.0;

    auto px = [&](double u) { return ml + (u - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double ve) { return mt + plot_h - ve / y_max * plot_h; };

    static const char* colors[] = {"#1f6fb2", "#c03a2b"};
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\">\n";
    svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + title + "</text>\n";
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + plot_h) + "\" x2=\"" + fmt(ml + plot_w) +
           "\" y2=\"" + fmt(mt + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
           fmt(mt + plot_h) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml + plot_w / 2) + "\" y=\"" + fmt(height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">along-segment "
           "position u (mm)</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(mt + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 "
           "18 " + fmt(mt + plot_h / 2) + ")\">variable error (mm)</text>\n";
    svg += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(mt + plot_h + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + fmt(x_min) +
           "</text>\n";
    svg += "<text x=\"" + fmt(ml + plot_w) + "\" y=\"" + fmt(mt + plot_h + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + fmt(x_max) +
           "</text>\n";
    svg += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(mt + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + fmt(y_max) +
           "</text>\n";
    svg += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(mt + plot_h + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n";

    int color_idx = 0;
    double legend_y = mt + 14.0;
    for (const auto& s : series) {
        const char* color = colors[color_idx % 2];
        std::string pts;
        for (const auto& [u, ve] : s.points) {
            if (!pts.empty()) pts += ' ';
            pts += fmt(px(u)) + "," + fmt(py(ve));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        for (const auto& [u, ve] : s.points) {
            svg += "<circle cx=\"" + fmt(px(u)) + "\" cy=\"" + fmt(py(ve)) +
                   "\" r=\"2.5\" fill=\"" + std::string(color) + "\"/>\n";
        }
        if (series.size() > 1) {
            svg += "<text x=\"" + fmt(ml + plot_w - 8) + "\" y=\"" + fmt(legend_y) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
                   std::string(color) + "\">" + s.label + "</text>\n";
            legend_y += 16.0;
        }
        ++color_idx;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace io_detail

// Variable-error profile plot. Model-comparison reports show both variants.
inline std::string to_svg_profile(const ExperimentReport& rep) {
    using io_detail::ProfileSeries;
    std::vector<ProfileSeries> series;
    if (!rep.paired_profile.empty()) {
        ProfileSeries single{"single", {}};
        ProfileSeries tri{"triangulation", {}};
        for (const auto& p : rep.paired_profile) {
            single.points.push_back({p.along_u, p.ve_single});
            tri.points.push_back({p.along_u, p.ve_triangulated});
        }
        series = {single, tri};
    } else {
        ProfileSeries s{to_string(rep.variant), {}};
        int index = 0;
        for (const auto& a : rep.aggregates) {
            s.points.push_back({a.has_u ? a.along_u : static_cast<double>(index), a.variable_error});
            ++index;
        }
        series = {s};
    }
    for (auto& s : series) {
        std::sort(s.points.begin(), s.points.end());
    }
    return io_detail::svg_plot(rep.scenario_id.empty() ? "variable-error profile" : rep.scenario_id,
                               series);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed to write '" + path + "'");
}

}  // namespace somato
