#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace balanced_f1 {

/// Binary ground-truth or prediction sequence over T >= 1 timesteps.
/// Immutable after construction; every element is exactly 0 or 1.
class LabelSeries {
public:
    explicit LabelSeries(std::vector<std::uint8_t> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("LabelSeries: length must be >= 1");
        for (auto v : values_) {
            if (v > 1) throw std::invalid_argument("LabelSeries: values must be 0 or 1");
        }
    }

    static LabelSeries zeros(std::size_t length) {
        return LabelSeries(std::vector<std::uint8_t>(length, 0));
    }

    std::size_t size() const { return values_.size(); }
    std::uint8_t operator[](std::size_t t) const { return values_[t]; }
    const std::vector<std::uint8_t>& values() const { return values_; }

    std::size_t count_positive() const {
        return static_cast<std::size_t>(
            std::count(values_.begin(), values_.end(), std::uint8_t{1}));
    }

    bool operator==(const LabelSeries& other) const = default;

private:
    std::vector<std::uint8_t> values_;
};

/// Detector score per timestep, normalized to [0, 1]. Same length contract
/// as the LabelSeries it will be compared against.
class ScoreSeries {
public:
    explicit ScoreSeries(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("ScoreSeries: length must be >= 1");
        for (double v : values_) {
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw std::invalid_argument("ScoreSeries: values must be finite and in [0,1]");
        }
    }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t t) const { return values_[t]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// One anomaly event: start index (0-based), width in timesteps, severity.
/// Severity is only meaningful for simulator-produced segments; segments
/// extracted from labels carry severity 0.
struct AnomalySegment {
    std::size_t start = 0;
    std::size_t width = 1;
    double severity = 0.0;

    std::size_t end() const { return start + width; }  // one past the last timestep

    bool operator==(const AnomalySegment& other) const {
        return start == other.start && width == other.width && severity == other.severity;
    }
};

/// Ordered, pairwise disjoint list of anomaly events.
class SegmentSet {
public:
    SegmentSet() = default;

    explicit SegmentSet(std::vector<AnomalySegment> segments) : segments_(std::move(segments)) {
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            if (segments_[i].width < 1)
                throw std::invalid_argument("SegmentSet: segment width must be >= 1");
            if (i > 0 && segments_[i].start < segments_[i - 1].end())
                throw std::invalid_argument("SegmentSet: segments must be sorted and disjoint");
        }
    }

    std::size_t size() const { return segments_.size(); }
    bool empty() const { return segments_.empty(); }
    const AnomalySegment& operator[](std::size_t i) const { return segments_[i]; }
    const std::vector<AnomalySegment>& segments() const { return segments_; }

    std::size_t total_width() const {
        return std::accumulate(segments_.begin(), segments_.end(), std::size_t{0},
                               [](std::size_t acc, const AnomalySegment& s) { return acc + s.width; });
    }

    auto begin() const { return segments_.begin(); }
    auto end() const { return segments_.end(); }

    bool operator==(const SegmentSet& other) const { return segments_ == other.segments_; }

private:
    std::vector<AnomalySegment> segments_;
};

/// Maximal runs of 1s as segments, severity 0. Empty set for all-zero labels.
inline SegmentSet segments_from_labels(const LabelSeries& labels) {
    std::vector<AnomalySegment> out;
    const std::size_t n = labels.size();
    std::size_t t = 0;
    while (t < n) {
        if (labels[t] == 1) {
            const std::size_t start = t;
            while (t < n && labels[t] == 1) ++t;
            out.push_back({start, t - start, 0.0});
        } else {
            ++t;
        }
    }
    return SegmentSet(std::move(out));
}

/// Inverse of segments_from_labels: labels[t] = 1 iff t lies in some segment.
inline LabelSeries labels_from_segments(const SegmentSet& segments, std::size_t length) {
    std::vector<std::uint8_t> values(length, 0);
    for (const auto& seg : segments) {
        if (seg.end() > length)
            throw std::out_of_range("labels_from_segments: segment exceeds series length");
        std::fill(values.begin() + static_cast<std::ptrdiff_t>(seg.start),
                  values.begin() + static_cast<std::ptrdiff_t>(seg.end()), std::uint8_t{1});
    }
    return LabelSeries(std::move(values));
}

/// output[t] = 1 iff scores[t] > gamma. Ties at gamma are negatives.
inline LabelSeries threshold_scores(const ScoreSeries& scores, double gamma) {
    if (!std::isfinite(gamma)) throw std::invalid_argument("threshold_scores: gamma must be finite");
    std::vector<std::uint8_t> values(scores.size());
    for (std::size_t t = 0; t < scores.size(); ++t)
        values[t] = scores[t] > gamma ? 1 : 0;
    return LabelSeries(std::move(values));
}

}  // namespace balanced_f1
