#include <catch2/catch_amalgamated.hpp>

#include "balanced_f1/adjustment.hpp"

#include "helpers.hpp"

using namespace balanced_f1;

namespace {

LabelSeries labels(std::vector<std::uint8_t> v) { return LabelSeries(std::move(v)); }

// Independent per-timestep references. They walk the raw arrays directly and
// never share code with the interval-based library paths.

std::vector<std::uint8_t> oracle_pa(const LabelSeries& pred, const LabelSeries& truth) {
    const std::size_t n = pred.size();
    std::vector<std::uint8_t> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = pred[t];
        if (truth[t] != 1) continue;
        std::size_t lo = t;
        while (lo > 0 && truth[lo - 1] == 1) --lo;
        std::size_t hi = t;
        while (hi + 1 < n && truth[hi + 1] == 1) ++hi;
        for (std::size_t u = lo; u <= hi; ++u)
            if (pred[u] == 1) out[t] = 1;
    }
    return out;
}

std::vector<std::uint8_t> oracle_kpa(const LabelSeries& pred, const LabelSeries& truth,
                                     double k_percent) {
    const std::size_t n = pred.size();
    std::vector<std::uint8_t> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = pred[t];
        if (truth[t] != 1) continue;
        std::size_t lo = t;
        while (lo > 0 && truth[lo - 1] == 1) --lo;
        std::size_t hi = t;
        while (hi + 1 < n && truth[hi + 1] == 1) ++hi;
        std::size_t hits = 0;
        for (std::size_t u = lo; u <= hi; ++u) hits += pred[u];
        const double ratio = static_cast<double>(hits) / static_cast<double>(hi - lo + 1);
        if (hits > 0 && ratio >= k_percent / 100.0) out[t] = 1;
    }
    return out;
}

std::vector<std::uint8_t> oracle_ba(const LabelSeries& pred, const LabelSeries& truth,
                                    std::size_t w_n) {
    auto out = oracle_pa(pred, truth);
    const long n = static_cast<long>(pred.size());
    const long left = (static_cast<long>(w_n) - 1) / 2;
    const long right = static_cast<long>(w_n) - 1 - left;
    for (long u = 0; u < n; ++u) {
        if (pred[static_cast<std::size_t>(u)] != 1 || truth[static_cast<std::size_t>(u)] != 0)
            continue;
        for (long k = u - left; k <= u + right; ++k) {
            if (k < 0 || k >= n) continue;
            if (truth[static_cast<std::size_t>(k)] == 0) out[static_cast<std::size_t>(k)] = 1;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("adjust_pa fills hit segments and keeps false positives", "[adjustment]") {
    const auto truth = labels({0, 0, 1, 1, 1, 0, 0, 0, 0, 0});
    const auto pred = labels({0, 0, 0, 1, 0, 0, 0, 1, 0, 0});
    CHECK(adjust_pa(pred, truth).values == labels({0, 0, 1, 1, 1, 0, 0, 1, 0, 0}));

    CHECK(adjust_pa(truth, truth).values == truth);
    const auto zeros = LabelSeries::zeros(10);
    CHECK(adjust_pa(zeros, truth).values == zeros);
    CHECK_THROWS_AS(adjust_pa(labels({1}), truth), std::invalid_argument);
}

TEST_CASE("adjust_kpa fills only segments above the coverage ratio", "[adjustment]") {
    const auto truth = labels({1, 1, 1, 1, 1});
    const auto pred = labels({1, 0, 0, 0, 0});
    CHECK(adjust_kpa(pred, truth, 20.0).values == labels({1, 1, 1, 1, 1}));  // 0.2 >= 0.2
    CHECK(adjust_kpa(pred, truth, 40.0).values == pred);                     // 0.2 < 0.4
    CHECK_THROWS_AS(adjust_kpa(pred, truth, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(adjust_kpa(pred, truth, 100.5), std::invalid_argument);
}

TEST_CASE("adjust_kpa at K=0 degenerates to adjust_pa", "[adjustment][property]") {
    Rng rng(303);
    for (int i = 0; i < 1000; ++i) {
        const auto truth = testing::random_labels(rng);
        const auto pred = testing::random_labels_of_length(rng, truth.size());
        CHECK(adjust_kpa(pred, truth, 0.0).values == adjust_pa(pred, truth).values);
    }
}

TEST_CASE("resolve_island_width", "[adjustment]") {
    const auto truth = labels({1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1});  // widths 4 and 6
    CHECK(resolve_island_width(truth, IslandParams::explicit_width(7)) == 7);
    CHECK(resolve_island_width(truth, IslandParams::mean_true_width()) == 5);

    std::vector<std::uint8_t> single(120, 0);
    std::fill(single.begin() + 10, single.begin() + 110, 1);
    CHECK(resolve_island_width(LabelSeries(single), IslandParams::mean_true_width()) == 100);

    CHECK_THROWS_AS(resolve_island_width(LabelSeries::zeros(5), IslandParams::mean_true_width()),
                    std::invalid_argument);
    CHECK_THROWS_AS(IslandParams::explicit_width(0), std::invalid_argument);
}

TEST_CASE("adjust_ba grows centered islands around false positives", "[adjustment]") {
    const auto truth = labels({0, 0, 1, 1, 1, 0, 0, 0, 0, 0});
    const auto pred = labels({0, 0, 0, 1, 0, 0, 0, 1, 0, 0});
    const auto ba = adjust_ba(pred, truth, IslandParams::explicit_width(3));
    CHECK(ba.values == labels({0, 0, 1, 1, 1, 0, 1, 1, 1, 0}));

    CHECK(adjust_ba(truth, truth, IslandParams::explicit_width(3)).values == truth);
    CHECK_THROWS_AS(adjust_ba(labels({1, 0}), truth, IslandParams::explicit_width(3)),
                    std::invalid_argument);
}

TEST_CASE("adjust_ba matches the per-timestep reference", "[adjustment][property]") {
    Rng rng(404);
    for (int i = 0; i < 1500; ++i) {
        const auto truth = testing::random_labels(rng);
        const auto pred = testing::random_labels_of_length(rng, truth.size());
        const auto w_n = rng.uniform_int(1, 9);
        const auto got = adjust_ba(pred, truth, IslandParams::explicit_width(w_n));
        CHECK(got.values.values() == oracle_ba(pred, truth, w_n));
    }
}

TEST_CASE("adjust_pa and adjust_kpa match the per-timestep references",
          "[adjustment][property]") {
    Rng rng(405);
    for (int i = 0; i < 1500; ++i) {
        const auto truth = testing::random_labels(rng);
        const auto pred = testing::random_labels_of_length(rng, truth.size());
        CHECK(adjust_pa(pred, truth).values.values() == oracle_pa(pred, truth));
        const double k = rng.uniform(0.0, 100.0);
        CHECK(adjust_kpa(pred, truth, k).values.values() == oracle_kpa(pred, truth, k));
    }
}

TEST_CASE("adjustment protocols only expand predictions", "[adjustment][property]") {
    Rng rng(505);
    for (int i = 0; i < 1200; ++i) {
        const auto truth = testing::random_labels(rng);
        const auto pred = testing::random_labels_of_length(rng, truth.size());
        const auto k = rng.uniform(0.0, 100.0);
        const auto w_n = rng.uniform_int(1, 9);
        const auto pa = adjust_pa(pred, truth).values;
        const auto kpa = adjust_kpa(pred, truth, k).values;
        const auto ba = adjust_ba(pred, truth, IslandParams::explicit_width(w_n)).values;
        for (std::size_t t = 0; t < truth.size(); ++t) {
            CHECK(pa[t] >= pred[t]);
            CHECK(kpa[t] >= pred[t]);
            CHECK(ba[t] >= pred[t]);
            CHECK(pa[t] >= kpa[t]);  // PA dominates KPA for every K
            // islands never touch truth=1 timesteps, so BA == PA there
            if (truth[t] == 1) CHECK(ba[t] == pa[t]);
        }
    }
}

TEST_CASE("adjust_ba with unit islands reduces to adjust_pa", "[adjustment][property]") {
    Rng rng(606);
    for (int i = 0; i < 1200; ++i) {
        const auto truth = testing::random_labels(rng);
        const auto pred = testing::random_labels_of_length(rng, truth.size());
        CHECK(adjust_ba(pred, truth, IslandParams::explicit_width(1)).values ==
              adjust_pa(pred, truth).values);
    }
}

TEST_CASE("provenance mask is consistent with values", "[adjustment][property]") {
    Rng rng(707);
    for (int i = 0; i < 800; ++i) {
        const auto truth = testing::random_labels(rng);
        const auto pred = testing::random_labels_of_length(rng, truth.size());
        const auto w_n = rng.uniform_int(1, 9);
        const auto ba = adjust_ba(pred, truth, IslandParams::explicit_width(w_n));
        REQUIRE(ba.provenance.size() == truth.size());
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const auto tag = ba.provenance[t];
            CHECK((ba.values[t] == 1) == (tag != ProvenanceTag::Negative));
            if (pred[t] == 1)
                CHECK(tag == (truth[t] == 1 ? ProvenanceTag::RawTp : ProvenanceTag::RawFp));
            if (tag == ProvenanceTag::PaFill) CHECK((pred[t] == 0 && truth[t] == 1));
            if (tag == ProvenanceTag::IslandFill) CHECK((pred[t] == 0 && truth[t] == 0));
        }
    }
}
