#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "balanced_f1/csv.hpp"

namespace balanced_f1 {

/// Axes a report can bin or filter on.
enum class ReportField { Separation, PrecisionE, RecallE, Coverage };

inline const char* report_field_name(ReportField f) {
    switch (f) {
        case ReportField::Separation: return "separation";
        case ReportField::PrecisionE: return "precision";
        case ReportField::RecallE: return "recall";
        case ReportField::Coverage: return "coverage";
    }
    return "?";
}

inline ReportField report_field_from_name(const std::string& name) {
    if (name == "separation") return ReportField::Separation;
    if (name == "precision" || name == "precision_e") return ReportField::PrecisionE;
    if (name == "recall" || name == "recall_e") return ReportField::RecallE;
    if (name == "coverage") return ReportField::Coverage;
    throw std::invalid_argument("unknown report field '" + name + "'");
}

inline double report_field_value(const RunRow& r, ReportField f) {
    switch (f) {
        case ReportField::Separation: return r.separation;
        case ReportField::PrecisionE: return r.precision_e;
        case ReportField::RecallE: return r.recall_e;
        case ReportField::Coverage: return r.coverage;
    }
    return 0.0;
}

/// Closed-interval filter on one field (a "maintained range").
struct RangeFilter {
    ReportField field = ReportField::PrecisionE;
    double lo = 0.0;
    double hi = 1.0;
};

/// Binning layout: x-axis bins from a strictly increasing edge list, an
/// optional secondary panel axis, and maintained-range filters. A value x
/// falls in bin i when edges[i] < x <= edges[i+1]; the first bin also
/// includes its left edge.
struct ReportSpec {
    ReportField x_axis = ReportField::Separation;
    std::vector<double> x_edges = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    bool has_panels = false;
    ReportField panel_axis = ReportField::RecallE;
    std::vector<double> panel_edges = {0.0, 0.25, 0.75, 1.0};
    std::vector<RangeFilter> filters;
};

inline void validate_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) throw std::invalid_argument("report: need at least two bin edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument("report: bin edges must be strictly increasing");
}

/// Bin index for x, or -1 when x is outside [first, last].
inline int bin_index(double x, const std::vector<double>& edges) {
    if (std::isnan(x) || x < edges.front() || x > edges.back()) return -1;
    if (x == edges.front()) return 0;
    const auto it = std::lower_bound(edges.begin(), edges.end(), x);
    return static_cast<int>(it - edges.begin()) - 1;
}

/// Per-(panel, x-bin) aggregate: run count and mean/std of each F1 variant.
/// Empty bins carry NaN means.
struct ReportRow {
    int panel = 0;
    std::string panel_label;
    int bin = 0;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double x_mid = 0.0;
    std::size_t n = 0;
    double mean_f1_p = NAN, mean_f1_pa = NAN, mean_f1_kpa = NAN, mean_f1_ba = NAN;
    double std_f1_p = NAN, std_f1_pa = NAN, std_f1_kpa = NAN, std_f1_ba = NAN;
};

/// Pure function of the rows: filters, bins, and aggregates. Skipped runs
/// are ignored.
inline std::vector<ReportRow> binned_report(const std::vector<RunRow>& rows,
                                            const ReportSpec& spec) {
    validate_edges(spec.x_edges);
    if (spec.has_panels) validate_edges(spec.panel_edges);
    const std::size_t n_bins = spec.x_edges.size() - 1;
    const std::size_t n_panels = spec.has_panels ? spec.panel_edges.size() - 1 : 1;

    struct Acc {
        std::size_t n = 0;
        double sum[4] = {0, 0, 0, 0};
        double sumsq[4] = {0, 0, 0, 0};
    };
    std::vector<Acc> acc(n_bins * n_panels);

    for (const auto& r : rows) {
        if (!r.ok) continue;
        bool keep = true;
        for (const auto& f : spec.filters) {
            const double v = report_field_value(r, f.field);
            if (v < f.lo || v > f.hi) { keep = false; break; }
        }
        if (!keep) continue;
        const int bx = bin_index(report_field_value(r, spec.x_axis), spec.x_edges);
        if (bx < 0) continue;
        int bp = 0;
        if (spec.has_panels) {
            bp = bin_index(report_field_value(r, spec.panel_axis), spec.panel_edges);
            if (bp < 0) continue;
        }
        auto& a = acc[static_cast<std::size_t>(bp) * n_bins + static_cast<std::size_t>(bx)];
        const double vals[4] = {r.f1_p, r.f1_pa, r.f1_kpa, r.f1_ba};
        ++a.n;
        for (int i = 0; i < 4; ++i) {
            a.sum[i] += vals[i];
            a.sumsq[i] += vals[i] * vals[i];
        }
    }

    std::vector<ReportRow> out;
    out.reserve(acc.size());
    for (std::size_t p = 0; p < n_panels; ++p) {
        std::string label = "all";
        if (spec.has_panels) {
            label = std::string(report_field_name(spec.panel_axis)) + " " +
                    format_double(spec.panel_edges[p]) + "-" +
                    format_double(spec.panel_edges[p + 1]);
        }
        for (std::size_t b = 0; b < n_bins; ++b) {
            const auto& a = acc[p * n_bins + b];
            ReportRow row;
            row.panel = static_cast<int>(p);
            row.panel_label = label;
            row.bin = static_cast<int>(b);
            row.x_lo = spec.x_edges[b];
            row.x_hi = spec.x_edges[b + 1];
            row.x_mid = 0.5 * (row.x_lo + row.x_hi);
            row.n = a.n;
            if (a.n > 0) {
                double* means[4] = {&row.mean_f1_p, &row.mean_f1_pa, &row.mean_f1_kpa,
                                    &row.mean_f1_ba};
                double* stds[4] = {&row.std_f1_p, &row.std_f1_pa, &row.std_f1_kpa,
                                   &row.std_f1_ba};
                for (int i = 0; i < 4; ++i) {
                    const double mean = a.sum[i] / static_cast<double>(a.n);
                    const double var =
                        std::max(0.0, a.sumsq[i] / static_cast<double>(a.n) - mean * mean);
                    *means[i] = mean;
                    *stds[i] = std::sqrt(var);
                }
            }
            out.push_back(std::move(row));
        }
    }
    return out;
}

inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                             const ReportSpec& spec) {
    out << "panel,panel_label,bin,x_axis,x_lo,x_hi,x_mid,n,"
           "mean_f1_p,std_f1_p,mean_f1_pa,std_f1_pa,mean_f1_kpa,std_f1_kpa,"
           "mean_f1_ba,std_f1_ba\n";
    for (const auto& r : rows) {
        out << r.panel << ',' << r.panel_label << ',' << r.bin << ','
            << report_field_name(spec.x_axis) << ',' << format_double(r.x_lo) << ','
            << format_double(r.x_hi) << ',' << format_double(r.x_mid) << ',' << r.n << ','
            << format_double(r.mean_f1_p) << ',' << format_double(r.std_f1_p) << ','
            << format_double(r.mean_f1_pa) << ',' << format_double(r.std_f1_pa) << ','
            << format_double(r.mean_f1_kpa) << ',' << format_double(r.std_f1_kpa) << ','
            << format_double(r.mean_f1_ba) << ',' << format_double(r.std_f1_ba) << '\n';
    }
}

/// Spearman rank correlation with tie-averaged ranks.
inline double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman_rho: need two equal-length series of size >= 2");
    const auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

}  // namespace balanced_f1
