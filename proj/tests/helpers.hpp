#pragma once

#include <cstdint>
#include <vector>

#include "balanced_f1/rng.hpp"
#include "balanced_f1/series.hpp"

namespace balanced_f1::testing {

/// Random binary series with a random positive density, biased toward
/// clumpy patterns so adjustment paths see realistic segment structure.
inline LabelSeries random_labels(Rng& rng, std::size_t min_len = 1, std::size_t max_len = 64) {
    const std::size_t n = rng.uniform_int(min_len, max_len);
    const double density = rng.uniform01();
    const double stickiness = 0.5 + 0.45 * rng.uniform01();
    std::vector<std::uint8_t> v(n);
    std::uint8_t state = rng.bernoulli(density) ? 1 : 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (!rng.bernoulli(stickiness)) state = rng.bernoulli(density) ? 1 : 0;
        v[t] = state;
    }
    return LabelSeries(std::move(v));
}

inline LabelSeries random_labels_of_length(Rng& rng, std::size_t n) {
    const double density = rng.uniform01();
    std::vector<std::uint8_t> v(n);
    for (auto& x : v) x = rng.bernoulli(density) ? 1 : 0;
    return LabelSeries(std::move(v));
}

inline ScoreSeries random_scores(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform01();
    return ScoreSeries(std::move(v));
}

}  // namespace balanced_f1::testing
