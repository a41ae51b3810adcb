#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "balanced_f1/series.hpp"

namespace balanced_f1 {

enum class Protocol : std::uint8_t { None, PA, KPA, BA };

/// Per-timestep audit tag explaining how an adjusted positive came to be.
enum class ProvenanceTag : std::uint8_t {
    Negative,    // adjusted value 0
    RawTp,       // raw prediction 1 on a true-anomaly timestep
    RawFp,       // raw prediction 1 on a regular timestep
    PaFill,      // filled because its true segment was hit
    IslandFill,  // filled by a false-positive island
};

/// Adjusted prediction plus audit mask. The mask is for reporting only;
/// metric computation uses `values`.
struct AdjustedPrediction {
    LabelSeries values;
    Protocol protocol;
    std::vector<ProvenanceTag> provenance;
};

enum class IslandPolicy : std::uint8_t { Explicit, MeanTrueWidth };

/// Island width selection for balanced adjustment: either an explicit
/// w_N >= 1 or the rounded mean width of the true segments.
struct IslandParams {
    IslandPolicy policy = IslandPolicy::MeanTrueWidth;
    std::size_t width = 1;  // used when policy == Explicit

    static IslandParams explicit_width(std::size_t w) {
        if (w < 1) throw std::invalid_argument("IslandParams: explicit width must be >= 1");
        return {IslandPolicy::Explicit, w};
    }
    static IslandParams mean_true_width() { return {IslandPolicy::MeanTrueWidth, 1}; }
};

inline std::size_t resolve_island_width(const LabelSeries& truth, const IslandParams& params) {
    if (params.policy == IslandPolicy::Explicit) {
        if (params.width < 1) throw std::invalid_argument("resolve_island_width: width must be >= 1");
        return params.width;
    }
    const SegmentSet segs = segments_from_labels(truth);
    if (segs.empty())
        throw std::invalid_argument("resolve_island_width: mean-width policy needs >= 1 true segment");
    const double mean = static_cast<double>(segs.total_width()) / static_cast<double>(segs.size());
    const auto rounded = static_cast<std::size_t>(std::llround(mean));
    return rounded < 1 ? 1 : rounded;
}

namespace detail {

inline void require_same_length(const LabelSeries& pred, const LabelSeries& truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("adjustment: pred and truth lengths differ");
}

/// Tags raw positives and fills true segments whose raw-positive count
/// satisfies `segment_hits -> fill` (PA fills on any hit, KPA on a ratio).
template <typename FillPredicate>
AdjustedPrediction fill_segments(const LabelSeries& pred, const LabelSeries& truth,
                                 Protocol protocol, FillPredicate should_fill) {
    require_same_length(pred, truth);
    const std::size_t n = pred.size();
    std::vector<std::uint8_t> adjusted(pred.values());
    std::vector<ProvenanceTag> tags(n, ProvenanceTag::Negative);
    for (std::size_t t = 0; t < n; ++t) {
        if (pred[t] == 1)
            tags[t] = truth[t] == 1 ? ProvenanceTag::RawTp : ProvenanceTag::RawFp;
    }
    for (const auto& seg : segments_from_labels(truth)) {
        std::size_t hits = 0;
        for (std::size_t t = seg.start; t < seg.end(); ++t) hits += pred[t];
        if (hits == 0 || !should_fill(hits, seg.width)) continue;
        for (std::size_t t = seg.start; t < seg.end(); ++t) {
            if (adjusted[t] == 0) {
                adjusted[t] = 1;
                tags[t] = ProvenanceTag::PaFill;
            }
        }
    }
    return {LabelSeries(std::move(adjusted)), protocol, std::move(tags)};
}

}  // namespace detail

/// Point adjustment: a true segment containing at least one raw positive is
/// filled entirely; all other timesteps are left untouched.
inline AdjustedPrediction adjust_pa(const LabelSeries& pred, const LabelSeries& truth) {
    return detail::fill_segments(pred, truth, Protocol::PA,
                                 [](std::size_t, std::size_t) { return true; });
}

/// K%-thresholded point adjustment: a segment is filled only when its raw
/// positives cover at least K percent of its width (inclusive); segments
/// below the ratio keep their raw predictions. K = 0 degenerates to PA.
inline AdjustedPrediction adjust_kpa(const LabelSeries& pred, const LabelSeries& truth,
                                     double k_percent) {
    if (!(k_percent >= 0.0 && k_percent <= 100.0))
        throw std::invalid_argument("adjust_kpa: K must be in [0,100]");
    return detail::fill_segments(
        pred, truth, Protocol::KPA, [k_percent](std::size_t hits, std::size_t width) {
            return static_cast<double>(hits) / static_cast<double>(width) >= k_percent / 100.0;
        });
}

/// Balanced adjustment: PA fill of hit segments plus, for every raw
/// false-positive timestep u, an island of w_N consecutive timesteps
/// centered at u — [u - floor((w_N-1)/2), u + ceil((w_N-1)/2)] — clipped to
/// the series bounds and to truth == 0. Islands anchor on raw FPs only
/// (single pass) and merge by union.
inline AdjustedPrediction adjust_ba(const LabelSeries& pred, const LabelSeries& truth,
                                    const IslandParams& params) {
    detail::require_same_length(pred, truth);
    const std::size_t w_n = resolve_island_width(truth, params);
    AdjustedPrediction out = adjust_pa(pred, truth);
    out.protocol = Protocol::BA;
    if (w_n == 1) return out;  // width-1 island is the FP itself

    const std::size_t n = pred.size();
    const std::size_t left = (w_n - 1) / 2;
    const std::size_t right = w_n - 1 - left;
    std::vector<std::uint8_t> adjusted(out.values.values());
    for (std::size_t u = 0; u < n; ++u) {
        if (pred[u] != 1 || truth[u] != 0) continue;  // islands anchor on raw FPs
        const std::size_t lo = u >= left ? u - left : 0;
        const std::size_t hi = std::min(n - 1, u + right);
        for (std::size_t t = lo; t <= hi; ++t) {
            if (truth[t] == 0 && adjusted[t] == 0) {
                adjusted[t] = 1;
                out.provenance[t] = ProvenanceTag::IslandFill;
            }
        }
    }
    out.values = LabelSeries(std::move(adjusted));
    return out;
}

}  // namespace balanced_f1
