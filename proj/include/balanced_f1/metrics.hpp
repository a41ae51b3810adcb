#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "balanced_f1/adjustment.hpp"
#include "balanced_f1/series.hpp"

namespace balanced_f1 {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

inline ConfusionCounts confusion(const LabelSeries& truth, const LabelSeries& pred) {
    if (truth.size() != pred.size())
        throw std::invalid_argument("confusion: truth and pred lengths differ");
    ConfusionCounts c;
    for (std::size_t t = 0; t < truth.size(); ++t) {
        if (truth[t] == 1)
            pred[t] == 1 ? ++c.tp : ++c.fn;
        else
            pred[t] == 1 ? ++c.fp : ++c.tn;
    }
    return c;
}

struct PointMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Degenerate conventions: precision = 1 when nothing was predicted,
/// recall = 1 when nothing was anomalous, f1 = 1 on perfect all-negative
/// agreement and 0 whenever tp = 0 with any error present. These keep the
/// score totally ordered across threshold sweeps.
inline PointMetrics precision_recall_f1(const ConfusionCounts& c) {
    PointMetrics m;
    m.precision = (c.tp + c.fp == 0) ? 1.0
                                     : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    m.recall = (c.tp + c.fn == 0) ? 1.0
                                  : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (c.tp == 0) {
        m.f1 = (c.fp + c.fn == 0) ? 1.0 : 0.0;
    } else {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

/// Selects which adjustment runs before the pointwise F1.
struct MetricVariant {
    Protocol protocol = Protocol::None;
    double k_percent = 20.0;                               // KPA only
    IslandParams island = IslandParams::mean_true_width();  // BA only

    static MetricVariant pointwise() { return {Protocol::None, 0.0, {}}; }
    static MetricVariant pa() { return {Protocol::PA, 0.0, {}}; }
    static MetricVariant kpa(double k) { return {Protocol::KPA, k, {}}; }
    static MetricVariant ba(IslandParams params) { return {Protocol::BA, 0.0, params}; }
};

inline PointMetrics f1_variant(const LabelSeries& truth, const LabelSeries& pred,
                               const MetricVariant& variant) {
    switch (variant.protocol) {
        case Protocol::None:
            return precision_recall_f1(confusion(truth, pred));
        case Protocol::PA:
            return precision_recall_f1(confusion(truth, adjust_pa(pred, truth).values));
        case Protocol::KPA:
            return precision_recall_f1(
                confusion(truth, adjust_kpa(pred, truth, variant.k_percent).values));
        case Protocol::BA:
            return precision_recall_f1(
                confusion(truth, adjust_ba(pred, truth, variant.island).values));
    }
    throw std::logic_error("f1_variant: unknown protocol");
}

/// Event-level diagnostics, computed from RAW (pre-adjustment) predictions.
struct EventMetrics {
    std::size_t n_true_events = 0;             // N
    std::size_t n_pred_events = 0;             // M
    std::size_t detected_true_events = 0;      // true events overlapping >= 1 predicted event
    std::size_t true_positive_predictions = 0; // predicted events overlapping >= 1 true event
    double precision_e = 1.0;
    double recall_e = 1.0;
    double coverage = 0.0;  // mean detected-fraction over detected true events
};

/// Segment-level core; the sets may contain adjacent (touching) events.
inline EventMetrics event_metrics(const SegmentSet& true_events, const SegmentSet& pred_events) {
    const auto overlap = [](const AnomalySegment& a, const AnomalySegment& b) {
        const std::size_t lo = std::max(a.start, b.start);
        const std::size_t hi = std::min(a.end(), b.end());
        return hi > lo ? hi - lo : 0;
    };

    EventMetrics em;
    em.n_true_events = true_events.size();
    em.n_pred_events = pred_events.size();

    double coverage_sum = 0.0;
    for (const auto& ev : true_events) {
        std::size_t hits = 0;
        for (const auto& pe : pred_events) hits += overlap(ev, pe);
        if (hits > 0) {
            ++em.detected_true_events;
            coverage_sum += static_cast<double>(hits) / static_cast<double>(ev.width);
        }
    }
    for (const auto& pe : pred_events) {
        bool overlaps = false;
        for (const auto& ev : true_events)
            if (overlap(ev, pe) > 0) { overlaps = true; break; }
        if (overlaps) ++em.true_positive_predictions;
    }

    em.precision_e = em.n_pred_events == 0
                         ? 1.0
                         : static_cast<double>(em.true_positive_predictions) /
                               static_cast<double>(em.n_pred_events);
    em.recall_e = em.n_true_events == 0
                      ? 1.0
                      : static_cast<double>(em.detected_true_events) /
                            static_cast<double>(em.n_true_events);
    em.coverage = em.detected_true_events == 0
                      ? 0.0
                      : coverage_sum / static_cast<double>(em.detected_true_events);
    return em;
}

inline EventMetrics event_metrics(const LabelSeries& truth, const LabelSeries& pred_raw) {
    if (truth.size() != pred_raw.size())
        throw std::invalid_argument("event_metrics: truth and pred lengths differ");
    return event_metrics(segments_from_labels(truth), segments_from_labels(pred_raw));
}

/// Bare Hellinger kernel over two discrete probability vectors:
/// H(P,Q) = sqrt(sum (sqrt(p_i) - sqrt(q_i))^2) / sqrt(2).
inline double hellinger_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("hellinger_distance: vector sizes differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        sum += d * d;
    }
    return std::min(1.0, std::sqrt(sum) / std::sqrt(2.0));
}

namespace detail {

/// Silverman's rule-of-thumb bandwidth. Falls back to the plain std term
/// when the IQR collapses, and to a small floor for near-constant samples.
inline double silverman_bandwidth(std::vector<double> sorted) {
    const std::size_t n = sorted.size();
    if (n < 2) return 1e-3;
    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : sorted) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    const double q1 = sorted[static_cast<std::size_t>(0.25 * static_cast<double>(n - 1))];
    const double q3 = sorted[static_cast<std::size_t>(0.75 * static_cast<double>(n - 1))];
    const double iqr = q3 - q1;
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    return h > 0.0 ? h : 1e-3;
}

/// Gaussian KDE evaluated on `grid_size` points spanning [lo, hi].
/// Samples are linearly binned onto an extended grid with the same spacing
/// and the density comes from a discrete kernel convolution; the binning
/// error is O((spacing/h)^2) and keeps the sweep-scale cost at
/// O(n + grid^2) instead of O(n * grid).
inline std::vector<double> kde_on_grid(const std::vector<double>& samples, double lo, double hi,
                                       std::size_t grid_size, double bandwidth) {
    const double span = hi - lo;
    const double spacing = grid_size > 1 ? span / static_cast<double>(grid_size - 1) : 0.0;
    if (spacing <= 0.0) {
        // Degenerate single-point grid: all mass lands on it after
        // normalization, so the density shape is irrelevant.
        return std::vector<double>(grid_size, 1.0);
    }

    double smin = samples[0], smax = samples[0];
    for (double v : samples) {
        smin = std::min(smin, v);
        smax = std::max(smax, v);
    }
    // Extended grid indices (relative to lo) covering every sample.
    const auto idx_of = [&](double x) {
        return static_cast<long>(std::floor((x - lo) / spacing));
    };
    const long ext_lo = std::min<long>(0, idx_of(smin));
    const long ext_hi = std::max<long>(static_cast<long>(grid_size) - 1, idx_of(smax) + 1);
    const std::size_t ext_n = static_cast<std::size_t>(ext_hi - ext_lo + 1);

    std::vector<double> weights(ext_n, 0.0);
    for (double v : samples) {
        const double pos = (v - lo) / spacing;
        const long j = static_cast<long>(std::floor(pos));
        const double frac = pos - static_cast<double>(j);
        weights[static_cast<std::size_t>(j - ext_lo)] += 1.0 - frac;
        if (j + 1 <= ext_hi) weights[static_cast<std::size_t>(j + 1 - ext_lo)] += frac;
    }

    // Kernel values depend only on the integer grid distance.
    const double inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);
    std::vector<double> kernel(ext_n, 0.0);
    for (std::size_t d = 0; d < ext_n; ++d) {
        const double x = static_cast<double>(d) * spacing;
        const double e = x * x * inv2h2;
        if (e > 40.0) break;  // kernel underflow; farther entries stay 0
        kernel[d] = std::exp(-e);
    }

    std::vector<double> density(grid_size, 0.0);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const long gi = static_cast<long>(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < ext_n; ++j) {
            if (weights[j] == 0.0) continue;
            const auto d = static_cast<std::size_t>(std::labs(gi - (static_cast<long>(j) + ext_lo)));
            if (d < ext_n) acc += weights[j] * kernel[d];
        }
        density[i] = acc;
    }
    return density;
}

inline std::vector<double> normalize_to_probability(std::vector<double> v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    if (sum <= 0.0) {
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
        return v;
    }
    for (double& x : v) x /= sum;
    return v;
}

}  // namespace detail

inline constexpr std::size_t kSeparationGridSize = 256;

/// Hellinger distance between kernel density estimates of the regular-region
/// and anomalous-region score distributions, both evaluated on a shared
/// 256-point grid spanning the union of their supports. Classes whose score
/// supports do not overlap at all score 1.0 by convention.
inline double separation_score(const ScoreSeries& scores, const LabelSeries& truth) {
    if (scores.size() != truth.size())
        throw std::invalid_argument("separation_score: scores and truth lengths differ");
    std::vector<double> regular, anomalous;
    for (std::size_t t = 0; t < truth.size(); ++t)
        (truth[t] == 1 ? anomalous : regular).push_back(scores[t]);
    if (regular.empty() || anomalous.empty())
        throw std::invalid_argument("separation_score: both classes must be non-empty");

    const auto [rmin_it, rmax_it] = std::minmax_element(regular.begin(), regular.end());
    const auto [amin_it, amax_it] = std::minmax_element(anomalous.begin(), anomalous.end());
    const double overlap_lo = std::max(*rmin_it, *amin_it);
    const double overlap_hi = std::min(*rmax_it, *amax_it);
    if (overlap_lo > overlap_hi) return 1.0;  // disjoint supports
    if (overlap_lo == overlap_hi && *rmin_it == *rmax_it && *amin_it == *amax_it)
        return 0.0;  // both classes are the same constant

    const double lo = std::min(*rmin_it, *amin_it);
    const double hi = std::max(*rmax_it, *amax_it);
    std::sort(regular.begin(), regular.end());
    std::sort(anomalous.begin(), anomalous.end());
    const double h_reg = detail::silverman_bandwidth(regular);
    const double h_ano = detail::silverman_bandwidth(anomalous);
    auto p = detail::normalize_to_probability(
        detail::kde_on_grid(regular, lo, hi, kSeparationGridSize, h_reg));
    auto q = detail::normalize_to_probability(
        detail::kde_on_grid(anomalous, lo, hi, kSeparationGridSize, h_ano));
    return hellinger_distance(p, q);
}

}  // namespace balanced_f1
