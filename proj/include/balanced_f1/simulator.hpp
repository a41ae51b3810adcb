#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "balanced_f1/adjustment.hpp"
#include "balanced_f1/metrics.hpp"
#include "balanced_f1/rng.hpp"
#include "balanced_f1/series.hpp"
#include "balanced_f1/theory.hpp"

namespace balanced_f1 {

/// Ground-truth layout constraints: event count, per-event width range,
/// and the minimum separation between consecutive events.
struct GroundTruthConfig {
    std::size_t length = 5000;
    std::size_t n_events = 1;
    std::array<std::size_t, 2> width_range = {100, 100};  // inclusive
    std::size_t min_gap = 10;
    std::uint64_t seed = 0;
};

/// Detector-score generation: latent per-event detection, coverage of the
/// detected sub-span, spurious detection spans, and a separation-controlled
/// truncated-Gaussian score model around the threshold.
struct ScoreConfig {
    double detect_prob = 1.0;
    std::array<double, 2> coverage_range = {1.0, 1.0};  // subset of (0, 1]
    std::size_t n_false_events = 0;
    std::array<std::size_t, 2> false_width_range = {1, 5};
    double separation = 1.0;  // s in [0, 1]
    double score_noise_sigma = 0.1;
    double gamma = 0.5;
    std::uint64_t seed = 0;
};

struct MetricConfig {
    double k_percent = 20.0;
    IslandParams island = IslandParams::mean_true_width();
};

/// One simulation's configuration, realized diagnostics, and metric values.
struct RunRecord {
    std::uint64_t run_id = 0;
    GroundTruthConfig gt;
    ScoreConfig sc;
    MetricConfig mc;
    std::size_t resolved_island_width = 0;
    EventMetrics events;
    double separation = 0.0;
    PointMetrics f1_p, f1_pa, f1_kpa, f1_ba;
    bool ok = true;
    std::string skip_reason;
};

namespace detail {

inline void validate_gt_config(const GroundTruthConfig& cfg) {
    if (cfg.length < 1) throw std::invalid_argument("GroundTruthConfig: length must be >= 1");
    if (cfg.width_range[0] < 1 || cfg.width_range[0] > cfg.width_range[1])
        throw std::invalid_argument("GroundTruthConfig: bad width range");
    if (cfg.n_events > 0) {
        if (cfg.min_gap < 1) throw std::invalid_argument("GroundTruthConfig: min_gap must be >= 1");
        const std::size_t needed =
            cfg.n_events * cfg.width_range[0] + (cfg.n_events - 1) * cfg.min_gap;
        if (needed > cfg.length)
            throw std::invalid_argument("GroundTruthConfig: events cannot fit in series");
    }
}

inline void validate_score_config(const ScoreConfig& cfg) {
    if (!(cfg.detect_prob >= 0.0 && cfg.detect_prob <= 1.0))
        throw std::invalid_argument("ScoreConfig: detect_prob must be in [0,1]");
    if (!(cfg.coverage_range[0] > 0.0 && cfg.coverage_range[0] <= cfg.coverage_range[1] &&
          cfg.coverage_range[1] <= 1.0))
        throw std::invalid_argument("ScoreConfig: coverage range must be within (0,1]");
    if (cfg.false_width_range[0] < 1 || cfg.false_width_range[0] > cfg.false_width_range[1])
        throw std::invalid_argument("ScoreConfig: bad false width range");
    if (!(cfg.separation >= 0.0 && cfg.separation <= 1.0))
        throw std::invalid_argument("ScoreConfig: separation must be in [0,1]");
    if (cfg.score_noise_sigma < 0.0)
        throw std::invalid_argument("ScoreConfig: sigma must be >= 0");
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw std::invalid_argument("ScoreConfig: gamma must be in (0,1)");
}

}  // namespace detail

/// Draws exactly n_events disjoint segments. Widths are uniform over the
/// width range; leftover slack is spread across the n+1 gaps by sorted
/// uniform cuts (stick-breaking), so every feasible layout is reachable.
/// Deterministic for a given seed.
inline std::pair<LabelSeries, SegmentSet> generate_ground_truth(const GroundTruthConfig& cfg) {
    detail::validate_gt_config(cfg);
    if (cfg.n_events == 0)
        return {LabelSeries::zeros(cfg.length), SegmentSet{}};

    Rng rng(cfg.seed);
    std::vector<std::size_t> widths(cfg.n_events);
    std::size_t total = 0;
    bool feasible = false;
    for (int attempt = 0; attempt < 1000 && !feasible; ++attempt) {
        total = 0;
        for (auto& w : widths) {
            w = rng.uniform_int(cfg.width_range[0], cfg.width_range[1]);
            total += w;
        }
        feasible = total + (cfg.n_events - 1) * cfg.min_gap <= cfg.length;
    }
    if (!feasible)
        throw std::invalid_argument("generate_ground_truth: drawn widths never fit (config infeasible)");

    const std::size_t slack = cfg.length - total - (cfg.n_events - 1) * cfg.min_gap;
    std::vector<std::size_t> cuts(cfg.n_events);
    for (auto& c : cuts) c = rng.uniform_int(0, slack);
    std::sort(cuts.begin(), cuts.end());

    std::vector<AnomalySegment> segs(cfg.n_events);
    std::size_t cursor = 0;
    std::size_t prev_cut = 0;
    for (std::size_t i = 0; i < cfg.n_events; ++i) {
        cursor += cuts[i] - prev_cut;  // extra gap beyond the minimum
        prev_cut = cuts[i];
        if (i > 0) cursor += cfg.min_gap;
        segs[i] = {cursor, widths[i], 0.0};
        cursor += widths[i];
    }
    SegmentSet set(std::move(segs));
    return {labels_from_segments(set, cfg.length), std::move(set)};
}

/// Scores plus the thresholded raw prediction.
struct SimulatedScores {
    ScoreSeries scores;
    LabelSeries raw_pred;
    SegmentSet planned_spans;  // detected sub-spans and false events, merged order
};

/// Two-population score generator. (1) Latent detection picks a contiguous
/// covered sub-span per detected event and places false-event spans in
/// regular territory (no overlap or adjacency, so planned event counts
/// survive thresholding). (2) Every timestep draws from a truncated
/// Gaussian on [0,1] whose mean sits above gamma on planned spans and below
/// it elsewhere, with the gap controlled by `separation`. (3) The raw
/// prediction is the strict threshold at gamma.
inline SimulatedScores simulate_scores(const SegmentSet& truth, const ScoreConfig& cfg,
                                       std::size_t length) {
    detail::validate_score_config(cfg);
    for (const auto& seg : truth)
        if (seg.end() > length)
            throw std::invalid_argument("simulate_scores: truth segment exceeds length");

    Rng rng(cfg.seed);
    std::vector<std::uint8_t> on_span(length, 0);

    // (1a) latent detection of true events
    for (const auto& seg : truth) {
        if (!rng.bernoulli(cfg.detect_prob)) continue;
        const double c = rng.uniform(cfg.coverage_range[0], cfg.coverage_range[1]);
        auto span_len = static_cast<std::size_t>(
            std::llround(c * static_cast<double>(seg.width)));
        span_len = std::clamp<std::size_t>(span_len, 1, seg.width);
        const std::size_t offset = rng.uniform_int(0, seg.width - span_len);
        std::fill(on_span.begin() + static_cast<std::ptrdiff_t>(seg.start + offset),
                  on_span.begin() + static_cast<std::ptrdiff_t>(seg.start + offset + span_len),
                  std::uint8_t{1});
    }

    // (1b) false detection spans: uniform placement in regular territory,
    // rejecting overlap with (or adjacency to) truth and other false spans
    std::vector<std::uint8_t> blocked(length, 0);
    for (const auto& seg : truth) {
        const std::size_t lo = seg.start > 0 ? seg.start - 1 : 0;
        const std::size_t hi = std::min(length, seg.end() + 1);
        std::fill(blocked.begin() + static_cast<std::ptrdiff_t>(lo),
                  blocked.begin() + static_cast<std::ptrdiff_t>(hi), std::uint8_t{1});
    }
    for (std::size_t k = 0; k < cfg.n_false_events; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            const std::size_t w = rng.uniform_int(cfg.false_width_range[0],
                                                  std::min(cfg.false_width_range[1], length));
            if (w > length) break;
            const std::size_t start = rng.uniform_int(0, length - w);
            bool clash = false;
            for (std::size_t t = start; t < start + w && !clash; ++t) clash = blocked[t] != 0;
            if (clash) continue;
            std::fill(on_span.begin() + static_cast<std::ptrdiff_t>(start),
                      on_span.begin() + static_cast<std::ptrdiff_t>(start + w), std::uint8_t{1});
            const std::size_t blo = start > 0 ? start - 1 : 0;
            const std::size_t bhi = std::min(length, start + w + 1);
            std::fill(blocked.begin() + static_cast<std::ptrdiff_t>(blo),
                      blocked.begin() + static_cast<std::ptrdiff_t>(bhi), std::uint8_t{1});
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("simulate_scores: could not place false events without overlap");
    }

    // (2) score simulation around the threshold
    const double mu_regular = cfg.gamma * (1.0 - cfg.separation * 0.9);
    const double mu_anomalous = cfg.gamma + cfg.separation * (1.0 - cfg.gamma) * 0.9;
    std::vector<double> scores(length);
    for (std::size_t t = 0; t < length; ++t) {
        const double mu = on_span[t] ? mu_anomalous : mu_regular;
        scores[t] = rng.truncated_normal01(mu, cfg.score_noise_sigma);
    }

    ScoreSeries score_series(std::move(scores));
    LabelSeries raw = threshold_scores(score_series, cfg.gamma);  // (3)
    SegmentSet planned = segments_from_labels(LabelSeries(std::move(on_span)));
    return {std::move(score_series), std::move(raw), std::move(planned)};
}

/// i.i.d. draws from the noise model, independent of any labels.
inline ScoreSeries random_scorer(std::size_t length, std::uint64_t seed, const NoiseModel& noise) {
    if (length < 1) throw std::invalid_argument("random_scorer: length must be >= 1");
    Rng rng(seed);
    std::vector<double> scores(length);
    for (auto& s : scores) s = noise.sample(rng);
    return ScoreSeries(std::move(scores));
}

/// Full chain: ground truth -> scores -> all four F1 variants plus the
/// event-level diagnostics and the separation score.
inline RunRecord run_simulation(const GroundTruthConfig& gt_cfg, const ScoreConfig& score_cfg,
                                const MetricConfig& metric_cfg) {
    RunRecord rec;
    rec.gt = gt_cfg;
    rec.sc = score_cfg;
    rec.mc = metric_cfg;

    auto [truth, segments] = generate_ground_truth(gt_cfg);
    auto sim = simulate_scores(segments, score_cfg, gt_cfg.length);

    rec.resolved_island_width = resolve_island_width(truth, metric_cfg.island);
    rec.events = event_metrics(truth, sim.raw_pred);
    rec.separation = separation_score(sim.scores, truth);
    rec.f1_p = f1_variant(truth, sim.raw_pred, MetricVariant::pointwise());
    rec.f1_pa = f1_variant(truth, sim.raw_pred, MetricVariant::pa());
    rec.f1_kpa = f1_variant(truth, sim.raw_pred, MetricVariant::kpa(metric_cfg.k_percent));
    rec.f1_ba = f1_variant(
        truth, sim.raw_pred,
        MetricVariant::ba(IslandParams::explicit_width(rec.resolved_island_width)));
    return rec;
}

}  // namespace balanced_f1
