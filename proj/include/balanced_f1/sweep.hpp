#pragma once

#include <array>
#include <cstdint>
#include <exception>
#include <ostream>
#include <thread>
#include <vector>

#include "balanced_f1/csv.hpp"
#include "balanced_f1/report.hpp"
#include "balanced_f1/rng.hpp"
#include "balanced_f1/simulator.hpp"

namespace balanced_f1 {

inline constexpr std::uint64_t kDefaultMasterSeed = 20240801;

/// Cross-product grid of simulator knobs. Runs cycle through the grid in
/// mixed-radix order; once exhausted the grid repeats with a fresh seed
/// stream until the requested run count is reached.
struct SweepGrid {
    std::size_t length = 5000;
    std::size_t min_gap = 10;
    std::array<std::size_t, 2> false_width_range = {1, 5};
    double gamma = 0.5;
    double score_noise_sigma = 0.1;
    double k_percent = 20.0;
    IslandParams island = IslandParams::mean_true_width();

    std::vector<std::size_t> n_events = {1, 2, 4, 8};
    std::vector<std::size_t> event_widths = {20, 50, 100};
    std::vector<double> detect_probs = {0.25, 0.5, 0.75, 1.0};
    std::vector<std::array<double, 2>> coverage_ranges = {
        {0.1, 0.1}, {0.1, 0.4}, {0.1, 0.7}, {0.1, 1.0}, {0.4, 0.4},
        {0.4, 0.7}, {0.4, 1.0}, {0.7, 0.7}, {0.7, 1.0}, {1.0, 1.0}};
    std::vector<std::size_t> n_false_events = {0, 2, 5, 10};
    std::vector<double> separations = {0.0, 0.25, 0.5, 0.75, 1.0};

    std::size_t size() const {
        return n_events.size() * event_widths.size() * detect_probs.size() *
               coverage_ranges.size() * n_false_events.size() * separations.size();
    }
};

struct SweepSpec {
    SweepGrid grid;
    std::size_t run_count = 15000;
    std::uint64_t master_seed = kDefaultMasterSeed;
    ReportSpec binning;  // default binning carried along for reporting
};

inline SweepSpec default_sweep_spec() {
    SweepSpec spec;
    spec.binning.x_axis = ReportField::Separation;
    spec.binning.has_panels = true;
    spec.binning.panel_axis = ReportField::RecallE;
    spec.binning.panel_edges = {0.0, 0.25, 0.75, 1.0};
    spec.binning.filters = {{ReportField::PrecisionE, 0.25, 0.75}};
    return spec;
}

/// Seed of run `run_id`; both the ground-truth and the score streams are
/// derived from it, so a row is reproducible from (master_seed, run_id).
inline std::uint64_t sweep_run_seed(std::uint64_t master_seed, std::uint64_t run_id) {
    return derive_seed(master_seed, run_id);
}

struct SweepRunConfig {
    GroundTruthConfig gt;
    ScoreConfig sc;
    MetricConfig mc;
    std::uint64_t seed = 0;
};

inline SweepRunConfig sweep_run_config(const SweepSpec& spec, std::uint64_t run_id) {
    const SweepGrid& g = spec.grid;
    std::size_t idx = static_cast<std::size_t>(run_id) % g.size();
    const auto take = [&idx](const auto& list) {
        const auto v = list[idx % list.size()];
        idx /= list.size();
        return v;
    };
    SweepRunConfig cfg;
    cfg.seed = sweep_run_seed(spec.master_seed, run_id);

    cfg.gt.length = g.length;
    cfg.gt.min_gap = g.min_gap;
    cfg.gt.n_events = take(g.n_events);
    const std::size_t width = take(g.event_widths);
    cfg.gt.width_range = {width, width};
    cfg.gt.seed = derive_seed(cfg.seed, 1);

    cfg.sc.detect_prob = take(g.detect_probs);
    cfg.sc.coverage_range = take(g.coverage_ranges);
    cfg.sc.n_false_events = take(g.n_false_events);
    cfg.sc.false_width_range = g.false_width_range;
    cfg.sc.separation = take(g.separations);
    cfg.sc.score_noise_sigma = g.score_noise_sigma;
    cfg.sc.gamma = g.gamma;
    cfg.sc.seed = derive_seed(cfg.seed, 2);

    cfg.mc.k_percent = g.k_percent;
    cfg.mc.island = g.island;
    return cfg;
}

/// Executes the whole sweep. Runs own independent RNG streams and are
/// embarrassingly parallel; records come back ordered by run id, so the
/// output does not depend on scheduling. Infeasible runs are recorded as
/// skipped, not fatal.
inline std::vector<RunRecord> run_sweep(const SweepSpec& spec, unsigned workers = 1) {
    std::vector<RunRecord> records(spec.run_count);
    const auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < spec.run_count; i += step) {
            const auto cfg = sweep_run_config(spec, i);
            RunRecord rec;
            try {
                rec = run_simulation(cfg.gt, cfg.sc, cfg.mc);
            } catch (const std::exception& e) {
                rec.gt = cfg.gt;
                rec.sc = cfg.sc;
                rec.mc = cfg.mc;
                rec.ok = false;
                rec.skip_reason = e.what();
            }
            rec.run_id = i;
            records[i] = std::move(rec);
        }
    };
    if (workers <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
        for (auto& t : pool) t.join();
    }
    return records;
}

inline void write_run_csv(std::ostream& out, const std::vector<RunRecord>& records,
                          std::uint64_t master_seed) {
    out << kRunCsvHeader << '\n';
    for (const auto& r : records)
        write_run_csv_row(out, r, sweep_run_seed(master_seed, r.run_id));
}

}  // namespace balanced_f1
