#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "balanced_f1/report.hpp"
#include "balanced_f1/simulator.hpp"
#include "balanced_f1/sweep.hpp"

namespace balanced_f1 {

namespace detail {

template <typename T>
void maybe_get(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T, std::size_t N>
void maybe_get_array(const nlohmann::json& j, const char* key, std::array<T, N>& out) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != N)
        throw std::runtime_error(std::string("config: '") + key + "' must be an array of " +
                                 std::to_string(N));
    for (std::size_t i = 0; i < N; ++i) out[i] = v[i].get<T>();
}

inline IslandParams island_from_json(const nlohmann::json& j, IslandParams fallback) {
    IslandParams p = fallback;
    if (j.contains("island_policy")) {
        const auto policy = j.at("island_policy").get<std::string>();
        if (policy == "auto" || policy == "mean_true_width") {
            p = IslandParams::mean_true_width();
        } else if (policy == "explicit") {
            p = IslandParams::explicit_width(j.at("island_width").get<std::size_t>());
        } else {
            throw std::runtime_error("config: island_policy must be 'auto' or 'explicit'");
        }
    } else if (j.contains("island_width")) {
        p = IslandParams::explicit_width(j.at("island_width").get<std::size_t>());
    }
    return p;
}

}  // namespace detail

/// One simulation run: ground-truth, score, and metric settings in a single
/// JSON document.
struct SimulationConfig {
    GroundTruthConfig gt;
    ScoreConfig sc;
    MetricConfig mc;
};

inline SimulationConfig simulation_config_from_json(const nlohmann::json& j) {
    SimulationConfig cfg;
    if (j.contains("ground_truth")) {
        const auto& g = j.at("ground_truth");
        detail::maybe_get(g, "length", cfg.gt.length);
        detail::maybe_get(g, "n_events", cfg.gt.n_events);
        detail::maybe_get_array(g, "width_range", cfg.gt.width_range);
        detail::maybe_get(g, "min_gap", cfg.gt.min_gap);
        detail::maybe_get(g, "seed", cfg.gt.seed);
    }
    if (j.contains("scores")) {
        const auto& s = j.at("scores");
        detail::maybe_get(s, "detect_prob", cfg.sc.detect_prob);
        detail::maybe_get_array(s, "coverage_range", cfg.sc.coverage_range);
        detail::maybe_get(s, "n_false_events", cfg.sc.n_false_events);
        detail::maybe_get_array(s, "false_width_range", cfg.sc.false_width_range);
        detail::maybe_get(s, "separation", cfg.sc.separation);
        detail::maybe_get(s, "score_noise_sigma", cfg.sc.score_noise_sigma);
        detail::maybe_get(s, "gamma", cfg.sc.gamma);
        detail::maybe_get(s, "seed", cfg.sc.seed);
    }
    if (j.contains("metrics")) {
        const auto& m = j.at("metrics");
        detail::maybe_get(m, "k_percent", cfg.mc.k_percent);
        cfg.mc.island = detail::island_from_json(m, cfg.mc.island);
    }
    return cfg;
}

inline ReportSpec report_spec_from_json(const nlohmann::json& j, ReportSpec base) {
    if (j.contains("axis")) base.x_axis = report_field_from_name(j.at("axis").get<std::string>());
    if (j.contains("edges")) base.x_edges = j.at("edges").get<std::vector<double>>();
    if (j.contains("panel_axis")) {
        base.has_panels = true;
        base.panel_axis = report_field_from_name(j.at("panel_axis").get<std::string>());
    }
    if (j.contains("panel_edges"))
        base.panel_edges = j.at("panel_edges").get<std::vector<double>>();
    if (j.contains("filters")) {
        base.filters.clear();
        for (const auto& [name, range] : j.at("filters").items()) {
            if (!range.is_array() || range.size() != 2)
                throw std::runtime_error("config: filter ranges must be [lo, hi]");
            base.filters.push_back(
                {report_field_from_name(name), range[0].get<double>(), range[1].get<double>()});
        }
    }
    validate_edges(base.x_edges);
    if (base.has_panels) validate_edges(base.panel_edges);
    return base;
}

/// Sweep spec document: fixed knobs plus per-knob value lists under "grid".
/// Anything absent keeps the default-sweep value.
inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    SweepSpec spec = default_sweep_spec();
    detail::maybe_get(j, "run_count", spec.run_count);
    detail::maybe_get(j, "master_seed", spec.master_seed);

    SweepGrid& g = spec.grid;
    detail::maybe_get(j, "length", g.length);
    detail::maybe_get(j, "min_gap", g.min_gap);
    detail::maybe_get_array(j, "false_width_range", g.false_width_range);
    detail::maybe_get(j, "gamma", g.gamma);
    detail::maybe_get(j, "score_noise_sigma", g.score_noise_sigma);
    detail::maybe_get(j, "k_percent", g.k_percent);
    g.island = detail::island_from_json(j, g.island);

    if (j.contains("grid")) {
        const auto& gj = j.at("grid");
        detail::maybe_get(gj, "n_events", g.n_events);
        detail::maybe_get(gj, "event_width", g.event_widths);
        detail::maybe_get(gj, "detect_prob", g.detect_probs);
        detail::maybe_get(gj, "n_false_events", g.n_false_events);
        detail::maybe_get(gj, "separation", g.separations);
        if (gj.contains("coverage_range")) {
            g.coverage_ranges.clear();
            for (const auto& pair : gj.at("coverage_range")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw std::runtime_error("config: coverage_range entries must be [lo, hi]");
                g.coverage_ranges.push_back({pair[0].get<double>(), pair[1].get<double>()});
            }
        }
    }
    if (g.size() == 0) throw std::runtime_error("config: sweep grid is empty");
    if (j.contains("binning")) spec.binning = report_spec_from_json(j.at("binning"), spec.binning);
    return spec;
}

}  // namespace balanced_f1
