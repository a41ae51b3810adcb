// balanced_f1 command-line harness: evaluate metrics on series CSVs, emit
// theory curves, run simulation sweeps, and aggregate binned reports.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "balanced_f1/balanced_f1.hpp"
#include "balanced_f1/config_json.hpp"

namespace {

using namespace balanced_f1;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

nlohmann::json load_json(const std::string& path) {
    auto in = open_input(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse '" + path + "': " + e.what());
    }
}

std::uint64_t env_or_default_seed() {
    if (const char* env = std::getenv("BALANCED_F1_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("BALANCED_F1_SEED must be an unsigned integer");
        }
    }
    return kDefaultMasterSeed;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateArgs {
    std::string truth_csv;
    std::string pred_csv;
    std::optional<double> gamma;
    double k_percent = 20.0;
    std::optional<std::size_t> island_width;
    bool island_auto = false;
    std::string out;
};

int cmd_evaluate(const EvaluateArgs& args) {
    auto truth_in = open_input(args.truth_csv);
    const auto truth_table = read_series_csv(truth_in);
    const LabelSeries truth(truth_table.labels);

    auto pred_in = open_input(args.pred_csv);
    const auto pred_table = read_series_csv(pred_in);

    std::optional<ScoreSeries> scores;
    LabelSeries raw_pred = [&] {
        if (pred_table.scores.has_value()) {
            if (!args.gamma.has_value())
                throw std::runtime_error("prediction file has a score column: --gamma is required");
            scores.emplace(*pred_table.scores);
            return threshold_scores(*scores, *args.gamma);
        }
        return LabelSeries(pred_table.labels);
    }();
    if (raw_pred.size() != truth.size())
        throw std::runtime_error("truth and prediction series lengths differ");

    const IslandParams island = args.island_width.has_value()
                                    ? IslandParams::explicit_width(*args.island_width)
                                    : IslandParams::mean_true_width();

    const auto f1_p = f1_variant(truth, raw_pred, MetricVariant::pointwise());
    const auto f1_pa = f1_variant(truth, raw_pred, MetricVariant::pa());
    const auto f1_kpa = f1_variant(truth, raw_pred, MetricVariant::kpa(args.k_percent));
    const auto f1_ba = f1_variant(truth, raw_pred, MetricVariant::ba(island));
    const auto em = event_metrics(truth, raw_pred);

    std::ostringstream report;
    report << "metric,value\n";
    report << "f1_p," << format_double(f1_p.f1) << '\n';
    report << "f1_pa," << format_double(f1_pa.f1) << '\n';
    report << "f1_kpa," << format_double(f1_kpa.f1) << '\n';
    report << "f1_ba," << format_double(f1_ba.f1) << '\n';
    if (scores.has_value()) {
        const bool two_classes =
            truth.count_positive() > 0 && truth.count_positive() < truth.size();
        report << "separation,"
               << (two_classes ? format_double(separation_score(*scores, truth)) : "nan") << '\n';
    }
    report << "precision_p," << format_double(f1_p.precision) << '\n';
    report << "recall_p," << format_double(f1_p.recall) << '\n';
    report << "precision_e," << format_double(em.precision_e) << '\n';
    report << "recall_e," << format_double(em.recall_e) << '\n';
    report << "coverage," << format_double(em.coverage) << '\n';
    report << "n_true_events," << em.n_true_events << '\n';
    report << "n_pred_events," << em.n_pred_events << '\n';
    report << "detected_true_events," << em.detected_true_events << '\n';
    report << "true_positive_predictions," << em.true_positive_predictions << '\n';
    report << "k_percent," << format_double(args.k_percent) << '\n';
    report << "island_width," << resolve_island_width(truth, island) << '\n';
    if (args.gamma.has_value()) report << "gamma," << format_double(*args.gamma) << '\n';

    std::cout << report.str();
    if (!args.out.empty()) open_output(args.out) << report.str();
    return 0;
}

// ---------------------------------------------------------------------------
// theory
// ---------------------------------------------------------------------------

struct TheoryArgs {
    std::vector<double> q = {0.2};
    std::size_t anomaly_width = 100;
    std::size_t island_width = 100;
    std::string noise = "uniform";
    double noise_mu = 0.5;
    double noise_sigma = 0.2;
    double gamma_min = 0.05;
    double gamma_max = 0.99;
    double gamma_step = 0.02;
    std::string out;
    std::string svg;
};

int cmd_theory(const TheoryArgs& args) {
    const NoiseModel noise = [&] {
        if (args.noise == "uniform") return NoiseModel::uniform();
        if (args.noise == "gaussian")
            return NoiseModel::truncated_gaussian(args.noise_mu, args.noise_sigma);
        throw std::runtime_error("--noise must be 'uniform' or 'gaussian'");
    }();
    if (args.gamma_step <= 0.0 || args.gamma_min > args.gamma_max)
        throw std::runtime_error("bad gamma grid");

    std::vector<double> gammas;
    for (double g = args.gamma_min; g <= args.gamma_max + 1e-12; g += args.gamma_step)
        gammas.push_back(std::min(g, args.gamma_max));

    std::ostringstream csv;
    csv << "q,gamma,f1_pa,f1_ba,precision_pa,precision_ba,recall\n";
    std::vector<double> svg_f1_pa, svg_f1_ba, svg_p_pa, svg_p_ba, svg_recall;
    for (double q : args.q) {
        for (double g : gammas) {
            const TheoryParams params{q, args.anomaly_width, args.island_width, g};
            const auto pa = f1_pa_noise(params, noise);
            const auto ba = f1_ba_noise(params, noise);
            csv << format_double(q) << ',' << format_double(g) << ',' << format_double(pa.f1)
                << ',' << format_double(ba.f1) << ',' << format_double(pa.precision) << ','
                << format_double(ba.precision) << ',' << format_double(pa.recall) << '\n';
            if (q == args.q.front()) {
                svg_f1_pa.push_back(pa.f1);
                svg_f1_ba.push_back(ba.f1);
                svg_p_pa.push_back(pa.precision);
                svg_p_ba.push_back(ba.precision);
                svg_recall.push_back(pa.recall);
            }
        }
    }
    if (args.out.empty())
        std::cout << csv.str();
    else
        open_output(args.out) << csv.str();

    if (!args.svg.empty()) {
        auto out = open_output(args.svg);
        std::ostringstream title;
        title << "random-scorer metrics vs threshold (q=" << format_double(args.q.front())
              << ", w_a=" << args.anomaly_width << ", w_N=" << args.island_width << ")";
        write_curves_svg(out, title.str(), "gamma", args.gamma_min, args.gamma_max,
                         {"f1_pa", "f1_ba", "precision_pa", "precision_ba", "recall"},
                         {gammas, gammas, gammas, gammas, gammas},
                         {svg_f1_pa, svg_f1_ba, svg_p_pa, svg_p_ba, svg_recall});
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string spec_json;
    std::string out = "runs.csv";
    unsigned workers = 0;
    std::optional<std::uint64_t> seed;
};

int cmd_sweep(const SweepArgs& args) {
    SweepSpec spec = default_sweep_spec();
    bool seed_from_file = false;
    if (!args.spec_json.empty()) {
        const auto doc = load_json(args.spec_json);
        spec = sweep_spec_from_json(doc);
        seed_from_file = doc.contains("master_seed");
    }
    if (args.seed.has_value())
        spec.master_seed = *args.seed;
    else if (!seed_from_file)
        spec.master_seed = env_or_default_seed();

    const unsigned workers =
        args.workers > 0 ? args.workers : std::max(1u, std::thread::hardware_concurrency());
    const auto records = run_sweep(spec, workers);

    std::size_t ok = 0;
    for (const auto& r : records) ok += r.ok ? 1 : 0;
    {
        auto out = open_output(args.out);
        write_run_csv(out, records, spec.master_seed);
    }
    std::cout << "runs," << records.size() << '\n'
              << "ok," << ok << '\n'
              << "skipped," << records.size() - ok << '\n'
              << "master_seed," << spec.master_seed << '\n'
              << "workers," << workers << '\n'
              << "out," << args.out << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportArgs {
    std::string runs_csv;
    std::string out_dir = ".";
    std::string axis;
    std::vector<double> edges;
    std::string panel;
    std::vector<double> panel_edges;
    std::vector<std::string> filters;
    std::string name = "custom";
    std::string spec_json;
};

ReportSpec figure_spec(ReportField x, ReportField panel, std::vector<double> panel_edges,
                       ReportField filter_field) {
    ReportSpec spec;
    spec.x_axis = x;
    spec.has_panels = true;
    spec.panel_axis = panel;
    spec.panel_edges = std::move(panel_edges);
    spec.filters = {{filter_field, 0.25, 0.75}};
    return spec;
}

void write_report_pair(const std::vector<RunRow>& rows, const ReportSpec& spec,
                       const std::filesystem::path& dir, const std::string& name,
                       const std::string& title) {
    const auto report = binned_report(rows, spec);
    const auto csv_path = dir / (name + ".csv");
    const auto svg_path = dir / (name + ".svg");
    {
        auto out = open_output(csv_path.string());
        write_report_csv(out, report, spec);
    }
    {
        auto out = open_output(svg_path.string());
        write_report_svg(out, report, spec, title);
    }
    std::cout << "wrote," << csv_path.string() << '\n' << "wrote," << svg_path.string() << '\n';
}

int cmd_report(const ReportArgs& args) {
    auto in = open_input(args.runs_csv);
    const auto rows = read_run_csv(in);
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);

    const bool custom = !args.axis.empty() || !args.edges.empty() || !args.panel.empty() ||
                        !args.filters.empty() || !args.spec_json.empty();
    if (!custom) {
        write_report_pair(rows,
                          figure_spec(ReportField::Separation, ReportField::RecallE,
                                      {0.0, 0.25, 0.75, 1.0}, ReportField::PrecisionE),
                          dir, "separation_by_recall",
                          "F1 variants vs separation (recall panels, precision 25-75%)");
        write_report_pair(rows,
                          figure_spec(ReportField::PrecisionE, ReportField::Coverage,
                                      {0.0, 0.20, 0.30, 1.0}, ReportField::RecallE),
                          dir, "precision_by_coverage",
                          "F1 variants vs event precision (coverage panels, recall 25-75%)");
        write_report_pair(rows,
                          figure_spec(ReportField::RecallE, ReportField::Coverage,
                                      {0.0, 0.20, 0.30, 1.0}, ReportField::PrecisionE),
                          dir, "recall_by_coverage",
                          "F1 variants vs event recall (coverage panels, precision 25-75%)");
        return 0;
    }

    ReportSpec spec;
    if (!args.spec_json.empty()) {
        const auto doc = load_json(args.spec_json);
        if (doc.contains("binning")) spec = report_spec_from_json(doc.at("binning"), spec);
    }
    if (!args.axis.empty()) spec.x_axis = report_field_from_name(args.axis);
    if (!args.edges.empty()) spec.x_edges = args.edges;
    if (!args.panel.empty()) {
        spec.has_panels = true;
        spec.panel_axis = report_field_from_name(args.panel);
        if (!args.panel_edges.empty()) spec.panel_edges = args.panel_edges;
    }
    if (!args.filters.empty()) {
        spec.filters.clear();
        for (const auto& f : args.filters) {
            // field:lo:hi
            const auto c1 = f.find(':');
            const auto c2 = f.find(':', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::runtime_error("--filter expects field:lo:hi");
            spec.filters.push_back({report_field_from_name(f.substr(0, c1)),
                                    std::stod(f.substr(c1 + 1, c2 - c1 - 1)),
                                    std::stod(f.substr(c2 + 1))});
        }
    }
    validate_edges(spec.x_edges);
    if (spec.has_panels) validate_edges(spec.panel_edges);
    write_report_pair(rows, spec, dir, args.name,
                      "F1 variants vs " + std::string(report_field_name(spec.x_axis)));
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string config_json;
    std::string out;
    std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& args) {
    auto cfg = simulation_config_from_json(load_json(args.config_json));
    if (args.seed.has_value()) {
        cfg.gt.seed = derive_seed(*args.seed, 1);
        cfg.sc.seed = derive_seed(*args.seed, 2);
    }
    const auto [truth, segments] = generate_ground_truth(cfg.gt);
    const auto sim = simulate_scores(segments, cfg.sc, cfg.gt.length);

    if (args.out.empty()) {
        write_series_csv(std::cout, truth, &sim.scores);
        return 0;
    }
    {
        auto out = open_output(args.out);
        write_series_csv(out, truth, &sim.scores);
    }
    const auto rec = run_simulation(cfg.gt, cfg.sc, cfg.mc);
    std::cout << "out," << args.out << '\n'
              << "f1_p," << format_double(rec.f1_p.f1) << '\n'
              << "f1_pa," << format_double(rec.f1_pa.f1) << '\n'
              << "f1_kpa," << format_double(rec.f1_kpa.f1) << '\n'
              << "f1_ba," << format_double(rec.f1_ba.f1) << '\n'
              << "separation," << format_double(rec.separation) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Balanced-adjustment F1 evaluation for time-series anomaly detection"};
    app.require_subcommand(1);

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand(
        "evaluate", "Score a prediction (or score) series against ground truth");
    evaluate->add_option("truth_csv", ev.truth_csv, "ground-truth series CSV (t,label)")
        ->required();
    evaluate->add_option("pred_csv", ev.pred_csv, "prediction series CSV (t,label[,score])")
        ->required();
    double gamma_val = 0.0;
    auto* gamma_opt = evaluate->add_option("--gamma", gamma_val,
                                           "threshold for a score column (strict >)");
    evaluate->add_option("--k-percent", ev.k_percent, "K%% threshold for the KPA variant")
        ->check(CLI::Range(0.0, 100.0))
        ->capture_default_str();
    std::size_t island_val = 0;
    auto* island_opt =
        evaluate->add_option("--island-width", island_val, "explicit island width w_N");
    evaluate->add_flag("--island-auto", ev.island_auto,
                       "island width = rounded mean true-segment width (default)");
    evaluate->add_option("--out", ev.out, "also write the metric report CSV here");

    TheoryArgs th;
    auto* theory = app.add_subcommand("theory", "Closed-form random-scorer curves over gamma");
    theory->add_option("--q", th.q, "anomaly ratio list")->capture_default_str();
    theory->add_option("--anomaly-width", th.anomaly_width, "event width w_a")
        ->capture_default_str();
    theory->add_option("--island-width", th.island_width, "island width w_N")
        ->capture_default_str();
    theory->add_option("--noise", th.noise, "noise model: uniform | gaussian")
        ->capture_default_str();
    theory->add_option("--noise-mu", th.noise_mu, "gaussian noise mean")->capture_default_str();
    theory->add_option("--noise-sigma", th.noise_sigma, "gaussian noise sigma")
        ->capture_default_str();
    theory->add_option("--gamma-min", th.gamma_min)->capture_default_str();
    theory->add_option("--gamma-max", th.gamma_max)->capture_default_str();
    theory->add_option("--gamma-step", th.gamma_step)->capture_default_str();
    theory->add_option("--out", th.out, "write CSV here instead of stdout");
    theory->add_option("--svg", th.svg, "also write a line-plot SVG");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Run a controlled simulation sweep");
    sweep->add_option("spec_json", sw.spec_json,
                      "sweep spec JSON (omit for the built-in 15,000-run default)");
    sweep->add_option("--out", sw.out, "run-record CSV path")->capture_default_str();
    sweep->add_option("--workers", sw.workers, "worker threads (0 = hardware)")
        ->capture_default_str();
    std::uint64_t sweep_seed = 0;
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "override the master seed");

    ReportArgs rp;
    auto* report = app.add_subcommand("report", "Bin a run CSV into aggregate CSV + SVG plots");
    report->add_option("runs_csv", rp.runs_csv, "run-record CSV from `sweep`")->required();
    report->add_option("--out-dir", rp.out_dir, "output directory")->capture_default_str();
    report->add_option("--axis", rp.axis, "custom x axis: separation|precision|recall|coverage");
    report->add_option("--edges", rp.edges, "custom x bin edges");
    report->add_option("--panel", rp.panel, "secondary panel axis");
    report->add_option("--panel-edges", rp.panel_edges, "panel bin edges");
    report->add_option("--filter", rp.filters, "maintained range, field:lo:hi (repeatable)");
    report->add_option("--name", rp.name, "custom report base name")->capture_default_str();
    report->add_option("--spec", rp.spec_json, "take binning defaults from a sweep spec JSON");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate one run's series CSV");
    simulate->add_option("config_json", sim.config_json, "simulation config JSON")->required();
    simulate->add_option("--out", sim.out, "series CSV path (stdout if omitted)");
    std::uint64_t sim_seed = 0;
    auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "override both stream seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (gamma_opt->count() > 0) ev.gamma = gamma_val;
    if (island_opt->count() > 0) ev.island_width = island_val;
    if (sweep_seed_opt->count() > 0) sw.seed = sweep_seed;
    if (sim_seed_opt->count() > 0) sim.seed = sim_seed;

    try {
        if (evaluate->parsed()) return cmd_evaluate(ev);
        if (theory->parsed()) return cmd_theory(th);
        if (sweep->parsed()) return cmd_sweep(sw);
        if (report->parsed()) return cmd_report(rp);
        if (simulate->parsed()) return cmd_simulate(sim);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
