#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <json.hpp>

#include "balanced_f1/config_json.hpp"
#include "balanced_f1/csv.hpp"
#include "balanced_f1/report.hpp"
#include "balanced_f1/svg.hpp"
#include "balanced_f1/sweep.hpp"

using namespace balanced_f1;
using Catch::Matchers::WithinAbs;

TEST_CASE("series csv round trip", "[io]") {
    const LabelSeries labels({0, 1, 1, 0});
    const ScoreSeries scores({0.25, 0.875, 0.5, 0.125});

    std::stringstream with_scores;
    write_series_csv(with_scores, labels, &scores);
    const auto table = read_series_csv(with_scores);
    CHECK(table.labels == labels.values());
    REQUIRE(table.scores.has_value());
    for (std::size_t i = 0; i < 4; ++i) CHECK_THAT((*table.scores)[i], WithinAbs(scores[i], 1e-9));

    std::stringstream labels_only;
    write_series_csv(labels_only, labels);
    const auto table2 = read_series_csv(labels_only);
    CHECK(table2.labels == labels.values());
    CHECK_FALSE(table2.scores.has_value());
}

TEST_CASE("series csv rejects malformed input", "[io]") {
    const auto parse = [](const std::string& text) {
        std::stringstream ss(text);
        return read_series_csv(ss);
    };
    CHECK_THROWS(parse(""));
    CHECK_THROWS(parse("time,label\n0,1\n"));
    CHECK_THROWS(parse("t,label\n1,1\n"));          // t must start at 0
    CHECK_THROWS(parse("t,label\n0,1\n2,0\n"));     // gap in t
    CHECK_THROWS(parse("t,label\n0,2\n"));          // non-binary label
    CHECK_THROWS(parse("t,label,score\n0,1\nx\n")); // field count
    CHECK_THROWS(parse("t,label\n"));               // no rows
}

TEST_CASE("run record csv round trip", "[io]") {
    SweepSpec spec = default_sweep_spec();
    spec.run_count = 6;
    spec.grid.length = 400;
    spec.grid.event_widths = {20};
    spec.grid.n_events = {1, 2};
    const auto records = run_sweep(spec, 1);

    std::stringstream ss;
    write_run_csv(ss, records, spec.master_seed);
    const auto rows = read_run_csv(ss);
    REQUIRE(rows.size() == records.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].run_id == records[i].run_id);
        CHECK(rows[i].length == 400);
        CHECK(rows[i].ok == records[i].ok);
        if (rows[i].ok) {
            CHECK_THAT(rows[i].f1_ba, WithinAbs(records[i].f1_ba.f1, 1e-5));
            CHECK_THAT(rows[i].separation, WithinAbs(records[i].separation, 1e-5));
        }
    }
}

TEST_CASE("run csv records skipped runs without aborting", "[io][sweep]") {
    SweepSpec spec = default_sweep_spec();
    spec.run_count = 2;
    spec.grid.length = 30;             // too small for the 100-wide events
    spec.grid.event_widths = {100};
    spec.grid.n_events = {2};
    const auto records = run_sweep(spec, 1);
    REQUIRE(records.size() == 2);
    CHECK_FALSE(records[0].ok);

    std::stringstream ss;
    write_run_csv(ss, records, spec.master_seed);
    CHECK(ss.str().find("skipped:") != std::string::npos);
    const auto rows = read_run_csv(ss);
    CHECK_FALSE(rows[0].ok);
    CHECK(rows[0].length == 30);
}

TEST_CASE("sweep output is deterministic and scheduling-independent", "[sweep]") {
    SweepSpec spec = default_sweep_spec();
    spec.run_count = 40;
    spec.grid.length = 300;
    spec.grid.event_widths = {10, 20};
    spec.grid.n_events = {1, 2};
    spec.grid.n_false_events = {0, 2};

    std::stringstream a, b;
    write_run_csv(a, run_sweep(spec, 1), spec.master_seed);
    write_run_csv(b, run_sweep(spec, 3), spec.master_seed);
    CHECK(a.str() == b.str());

    SweepSpec reseeded = spec;
    reseeded.master_seed += 1;
    std::stringstream c;
    write_run_csv(c, run_sweep(reseeded, 2), reseeded.master_seed);
    CHECK(a.str() != c.str());
}

TEST_CASE("binning follows the edge conventions", "[report]") {
    const auto mkrow = [](double sep, double prec, double rec) {
        RunRow r;
        r.ok = true;
        r.separation = sep;
        r.precision_e = prec;
        r.recall_e = rec;
        r.f1_p = r.f1_pa = r.f1_kpa = r.f1_ba = 0.5;
        return r;
    };

    ReportSpec spec;
    spec.x_axis = ReportField::Separation;
    spec.x_edges = {0.0, 0.1, 0.2};
    CHECK(bin_index(0.0, spec.x_edges) == 0);    // first bin owns its left edge
    CHECK(bin_index(0.05, spec.x_edges) == 0);
    CHECK(bin_index(0.1, spec.x_edges) == 0);    // bins are (lo, hi]
    CHECK(bin_index(0.15, spec.x_edges) == 1);
    CHECK(bin_index(0.2, spec.x_edges) == 1);
    CHECK(bin_index(0.25, spec.x_edges) == -1);

    const std::vector<RunRow> rows = {mkrow(0.05, 0.5, 0.5), mkrow(0.1, 0.5, 0.5),
                                      mkrow(0.15, 0.5, 0.5)};
    const auto report = binned_report(rows, spec);
    REQUIRE(report.size() == 2);
    CHECK(report[0].n == 2);
    CHECK(report[1].n == 1);
    CHECK(report[1].std_f1_ba == 0.0);  // single row in the bin

    // filters are closed intervals
    ReportSpec filtered = spec;
    filtered.filters = {{ReportField::PrecisionE, 0.25, 0.5}};
    CHECK(binned_report({mkrow(0.05, 0.5, 0.5)}, filtered)[0].n == 1);
    CHECK(binned_report({mkrow(0.05, 0.25, 0.5)}, filtered)[0].n == 1);
    CHECK(binned_report({mkrow(0.05, 0.51, 0.5)}, filtered)[0].n == 0);

    // empty bins carry NaN means and are written as nan markers
    std::stringstream out;
    write_report_csv(out, binned_report({mkrow(0.05, 0.51, 0.5)}, filtered), filtered);
    CHECK(out.str().find("nan") != std::string::npos);
}

TEST_CASE("panelled report separates secondary bins", "[report]") {
    ReportSpec spec;
    spec.x_axis = ReportField::Separation;
    spec.x_edges = {0.0, 0.5, 1.0};
    spec.has_panels = true;
    spec.panel_axis = ReportField::RecallE;
    spec.panel_edges = {0.0, 0.25, 0.75, 1.0};

    std::vector<RunRow> rows;
    for (double rec : {0.1, 0.5, 0.9}) {
        RunRow r;
        r.ok = true;
        r.separation = 0.6;
        r.recall_e = rec;
        r.precision_e = 0.5;
        r.f1_p = r.f1_pa = r.f1_kpa = r.f1_ba = rec;
        rows.push_back(r);
    }
    const auto report = binned_report(rows, spec);
    REQUIRE(report.size() == 6);  // 3 panels x 2 bins
    for (const auto& r : report) {
        if (r.n == 0) continue;
        CHECK(r.bin == 1);
        CHECK(r.n == 1);
    }
}

TEST_CASE("spearman rank correlation", "[report]") {
    CHECK_THAT(spearman_rho({1, 2, 3, 4}, {2, 4, 6, 8}), WithinAbs(1.0, 1e-12));
    CHECK_THAT(spearman_rho({1, 2, 3, 4}, {9, 7, 5, 3}), WithinAbs(-1.0, 1e-12));
    // tie-averaged ranks (1.5, 1.5, 3.5, 3.5) against (1, 2, 3, 4): 2/sqrt(5)
    CHECK_THAT(spearman_rho({1, 2, 3, 4}, {1, 1, 2, 2}), WithinAbs(0.8944271909999159, 1e-9));
    CHECK(std::abs(spearman_rho({1, 2, 3, 4, 5, 6}, {3, 1, 4, 1, 5, 2})) < 0.8);
    CHECK_THROWS_AS(spearman_rho({1}, {1}), std::invalid_argument);
}

TEST_CASE("report svg embeds the binned data", "[report][svg]") {
    ReportSpec spec;
    spec.x_edges = {0.0, 0.5, 1.0};
    RunRow r;
    r.ok = true;
    r.separation = 0.25;
    r.precision_e = r.recall_e = 0.5;
    r.f1_p = 0.2;
    r.f1_pa = 0.9;
    r.f1_kpa = 0.4;
    r.f1_ba = 0.6;
    const auto report = binned_report({r}, spec);

    std::stringstream svg;
    write_report_svg(svg, report, spec, "test");
    const auto text = svg.str();
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);
    CHECK(text.find("0.9") != std::string::npos);  // embedded mean value
    CHECK(text.find("</svg>") != std::string::npos);
}

TEST_CASE("F1_BA is the most precision-sensitive variant", "[report][sweep]") {
    // Reduced sweep across the separation/false-event knobs; recall
    // maintained in [0.25, 0.75] as in the precision-axis figure. BA's
    // islands tie its score directly to the false-alarm budget, so its
    // least-squares slope over the precision bins must dominate.
    SweepSpec spec = default_sweep_spec();
    spec.run_count = 1728;
    spec.grid.n_events = {2, 8};
    spec.grid.event_widths = {20, 100};
    spec.grid.detect_probs = {0.5, 1.0};
    spec.grid.coverage_ranges = {{0.1, 1.0}, {0.4, 0.7}, {1.0, 1.0}};
    spec.grid.n_false_events = {0, 2, 5, 10};
    spec.grid.separations = {0.0, 0.5, 1.0};
    const auto records = run_sweep(spec, 2);

    std::stringstream csv;
    write_run_csv(csv, records, spec.master_seed);
    const auto rows = read_run_csv(csv);

    ReportSpec fig5;
    fig5.x_axis = ReportField::PrecisionE;
    fig5.filters = {{ReportField::RecallE, 0.25, 0.75}};
    const auto report = binned_report(rows, fig5);
    std::stringstream once, twice;
    write_report_csv(once, report, fig5);
    write_report_csv(twice, binned_report(rows, fig5), fig5);
    CHECK(once.str() == twice.str());  // pure function of the rows

    const auto slope = [&](auto pick) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = 0;
        for (const auto& r : report) {
            if (r.n == 0) continue;
            const double y = pick(r);
            sx += r.x_mid;
            sy += y;
            sxx += r.x_mid * r.x_mid;
            sxy += r.x_mid * y;
            n += 1;
        }
        REQUIRE(n >= 3);
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const double s_p = slope([](const ReportRow& r) { return r.mean_f1_p; });
    const double s_pa = slope([](const ReportRow& r) { return r.mean_f1_pa; });
    const double s_kpa = slope([](const ReportRow& r) { return r.mean_f1_kpa; });
    const double s_ba = slope([](const ReportRow& r) { return r.mean_f1_ba; });
    CHECK(s_ba > s_p);
    CHECK(s_ba > s_pa);
    CHECK(s_ba > s_kpa);
}

TEST_CASE("simulation config json", "[io][json]") {
    const auto j = nlohmann::json::parse(R"({
        "ground_truth": {"length": 800, "n_events": 2, "width_range": [10, 30],
                          "min_gap": 15, "seed": 5},
        "scores": {"detect_prob": 0.75, "coverage_range": [0.4, 0.9],
                    "n_false_events": 3, "false_width_range": [2, 4],
                    "separation": 0.8, "score_noise_sigma": 0.05,
                    "gamma": 0.6, "seed": 6},
        "metrics": {"k_percent": 25.0, "island_policy": "explicit", "island_width": 40}
    })");
    const auto cfg = simulation_config_from_json(j);
    CHECK(cfg.gt.length == 800);
    CHECK(cfg.gt.width_range[1] == 30);
    CHECK(cfg.sc.detect_prob == 0.75);
    CHECK(cfg.sc.gamma == 0.6);
    CHECK(cfg.mc.k_percent == 25.0);
    CHECK(cfg.mc.island.policy == IslandPolicy::Explicit);
    CHECK(cfg.mc.island.width == 40);

    const auto rec = run_simulation(cfg.gt, cfg.sc, cfg.mc);
    CHECK(rec.ok);
    CHECK(rec.resolved_island_width == 40);
}

TEST_CASE("sweep spec json overrides defaults", "[io][json]") {
    const auto j = nlohmann::json::parse(R"({
        "run_count": 12,
        "master_seed": 99,
        "length": 1000,
        "gamma": 0.4,
        "grid": {
            "n_events": [1, 2],
            "event_width": [25],
            "detect_prob": [1.0],
            "coverage_range": [[0.5, 1.0]],
            "n_false_events": [0, 1],
            "separation": [1.0]
        },
        "binning": {"axis": "recall", "edges": [0, 0.5, 1],
                     "filters": {"precision": [0.2, 0.8]}}
    })");
    const auto spec = sweep_spec_from_json(j);
    CHECK(spec.run_count == 12);
    CHECK(spec.master_seed == 99);
    CHECK(spec.grid.length == 1000);
    CHECK(spec.grid.gamma == 0.4);
    CHECK(spec.grid.size() == 4);
    CHECK(spec.binning.x_axis == ReportField::RecallE);
    REQUIRE(spec.binning.filters.size() == 1);
    CHECK(spec.binning.filters[0].lo == 0.2);

    const auto defaults = default_sweep_spec();
    CHECK(defaults.grid.size() == 9600);
    CHECK(defaults.run_count == 15000);

    CHECK_THROWS(sweep_spec_from_json(nlohmann::json::parse(R"({"grid":{"n_events":[]}})")));
}
