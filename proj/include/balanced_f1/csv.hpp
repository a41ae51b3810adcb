#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "balanced_f1/series.hpp"
#include "balanced_f1/simulator.hpp"

namespace balanced_f1 {

/// Compact, locale-independent float formatting shared by every CSV writer
/// so identical runs serialize byte-identically.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + s + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("csv: bad ") + what + " value '" + s + "'");
    }
}

}  // namespace detail

/// Series CSV: header `t,label[,score]`, one row per timestep, t strictly
/// increasing from 0.
struct SeriesTable {
    std::vector<std::uint8_t> labels;
    std::optional<std::vector<double>> scores;
};

inline SeriesTable read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("series csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = detail::split_csv_line(line);
    const bool has_score = header.size() >= 3 && header[2] == "score";
    if (header.size() < 2 || header[0] != "t" || header[1] != "label" ||
        (header.size() >= 3 && !has_score) || header.size() > 3)
        throw std::runtime_error("series csv: header must be 't,label' or 't,label,score'");

    SeriesTable table;
    if (has_score) table.scores.emplace();
    std::size_t expected_t = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("series csv: wrong field count on row " +
                                     std::to_string(expected_t));
        if (detail::parse_u64(fields[0], "t") != expected_t)
            throw std::runtime_error("series csv: t must increase from 0 without gaps");
        const auto label = detail::parse_u64(fields[1], "label");
        if (label > 1) throw std::runtime_error("series csv: label must be 0 or 1");
        table.labels.push_back(static_cast<std::uint8_t>(label));
        if (has_score) table.scores->push_back(detail::parse_double(fields[2], "score"));
        ++expected_t;
    }
    if (table.labels.empty()) throw std::runtime_error("series csv: no data rows");
    return table;
}

inline void write_series_csv(std::ostream& out, const LabelSeries& labels,
                             const ScoreSeries* scores = nullptr) {
    if (scores && scores->size() != labels.size())
        throw std::invalid_argument("write_series_csv: length mismatch");
    out << (scores ? "t,label,score\n" : "t,label\n");
    for (std::size_t t = 0; t < labels.size(); ++t) {
        out << t << ',' << static_cast<int>(labels[t]);
        if (scores) out << ',' << format_double((*scores)[t]);
        out << '\n';
    }
}

inline constexpr const char* kRunCsvHeader =
    "run_id,seed,T,n_events,gamma,K,w_N,precision_E,recall_E,coverage,"
    "separation,f1_p,f1_pa,f1_kpa,f1_ba,status";

inline void write_run_csv_row(std::ostream& out, const RunRecord& r, std::uint64_t seed) {
    out << r.run_id << ',' << seed << ',' << r.gt.length << ',' << r.gt.n_events << ','
        << format_double(r.sc.gamma) << ',' << format_double(r.mc.k_percent) << ','
        << r.resolved_island_width << ',';
    if (r.ok) {
        out << format_double(r.events.precision_e) << ',' << format_double(r.events.recall_e)
            << ',' << format_double(r.events.coverage) << ',' << format_double(r.separation)
            << ',' << format_double(r.f1_p.f1) << ',' << format_double(r.f1_pa.f1) << ','
            << format_double(r.f1_kpa.f1) << ',' << format_double(r.f1_ba.f1) << ",ok\n";
    } else {
        out << "nan,nan,nan,nan,nan,nan,nan,nan,skipped:" << r.skip_reason << '\n';
    }
}

/// Flat view of one run-record CSV row, as consumed by the report stage.
struct RunRow {
    std::uint64_t run_id = 0;
    std::uint64_t seed = 0;
    std::size_t length = 0;
    std::size_t n_events = 0;
    double gamma = 0.0;
    double k_percent = 0.0;
    std::size_t island_width = 0;
    double precision_e = 0.0;
    double recall_e = 0.0;
    double coverage = 0.0;
    double separation = 0.0;
    double f1_p = 0.0;
    double f1_pa = 0.0;
    double f1_kpa = 0.0;
    double f1_ba = 0.0;
    bool ok = true;
};

inline std::vector<RunRow> read_run_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("run csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kRunCsvHeader) throw std::runtime_error("run csv: unexpected header");
    std::vector<RunRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 16) throw std::runtime_error("run csv: wrong field count");
        RunRow r;
        r.run_id = detail::parse_u64(f[0], "run_id");
        r.seed = detail::parse_u64(f[1], "seed");
        r.length = detail::parse_u64(f[2], "T");
        r.n_events = detail::parse_u64(f[3], "n_events");
        r.gamma = detail::parse_double(f[4], "gamma");
        r.k_percent = detail::parse_double(f[5], "K");
        r.island_width = detail::parse_u64(f[6], "w_N");
        r.ok = f[15] == "ok";
        if (r.ok) {
            r.precision_e = detail::parse_double(f[7], "precision_E");
            r.recall_e = detail::parse_double(f[8], "recall_E");
            r.coverage = detail::parse_double(f[9], "coverage");
            r.separation = detail::parse_double(f[10], "separation");
            r.f1_p = detail::parse_double(f[11], "f1_p");
            r.f1_pa = detail::parse_double(f[12], "f1_pa");
            r.f1_kpa = detail::parse_double(f[13], "f1_kpa");
            r.f1_ba = detail::parse_double(f[14], "f1_ba");
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace balanced_f1
