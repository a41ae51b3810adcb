#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "balanced_f1/csv.hpp"
#include "balanced_f1/report.hpp"

namespace balanced_f1 {

/// Self-contained multi-panel line-plot document for the binned reports.
/// One panel per secondary-variable bin, four lines per panel, values in
/// [0,1] on both axes. No external references; the plotted numbers are also
/// embedded verbatim in a leading <desc> block.
inline void write_report_svg(std::ostream& out, const std::vector<ReportRow>& rows,
                             const ReportSpec& spec, const std::string& title) {
    static const char* kMetricNames[4] = {"f1_p", "f1_pa", "f1_kpa", "f1_ba"};
    static const char* kColors[4] = {"#888888", "#d62728", "#1f77b4", "#2ca02c"};

    int n_panels = 0;
    for (const auto& r : rows) n_panels = std::max(n_panels, r.panel + 1);
    if (n_panels == 0) n_panels = 1;

    const double panel_w = 340.0, panel_h = 300.0;
    const double margin_l = 52.0, margin_r = 16.0, margin_t = 56.0, margin_b = 46.0;
    const double fig_w = margin_l + (panel_w + margin_r) * n_panels;
    const double fig_h = margin_t + panel_h + margin_b + 24.0;

    const double x_min = spec.x_edges.front(), x_max = spec.x_edges.back();
    const auto px = [&](int panel, double x) {
        return margin_l + (panel_w + margin_r) * panel +
               (x - x_min) / (x_max - x_min) * panel_w;
    };
    const auto py = [&](double y) { return margin_t + (1.0 - y) * panel_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fig_w << "\" height=\""
        << fig_h << "\" viewBox=\"0 0 " << fig_w << ' ' << fig_h << "\">\n";

    out << "<desc>panel,panel_label,x_mid,n,mean_f1_p,mean_f1_pa,mean_f1_kpa,mean_f1_ba\n";
    for (const auto& r : rows) {
        out << r.panel << ',' << r.panel_label << ',' << format_double(r.x_mid) << ',' << r.n
            << ',' << format_double(r.mean_f1_p) << ',' << format_double(r.mean_f1_pa) << ','
            << format_double(r.mean_f1_kpa) << ',' << format_double(r.mean_f1_ba) << '\n';
    }
    out << "</desc>\n";

    out << "<rect width=\"" << fig_w << "\" height=\"" << fig_h << "\" fill=\"white\"/>\n"
        << "<text x=\"" << fig_w / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\" font-weight=\"bold\">"
        << title << "</text>\n";

    for (int p = 0; p < n_panels; ++p) {
        const double x0 = px(p, x_min), x1 = px(p, x_max);
        std::string panel_label;
        for (const auto& r : rows)
            if (r.panel == p) { panel_label = r.panel_label; break; }

        out << "<rect x=\"" << x0 << "\" y=\"" << margin_t << "\" width=\"" << panel_w
            << "\" height=\"" << panel_h
            << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << margin_t - 8
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << panel_label << "</text>\n";

        for (int tick = 0; tick <= 4; ++tick) {
            const double fx = x_min + (x_max - x_min) * tick / 4.0;
            const double fy = tick / 4.0;
            out << "<line x1=\"" << px(p, fx) << "\" y1=\"" << py(0) << "\" x2=\"" << px(p, fx)
                << "\" y2=\"" << py(0) + 4 << "\" stroke=\"#333333\"/>\n"
                << "<text x=\"" << px(p, fx) << "\" y=\"" << py(0) + 16
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                << format_double(fx) << "</text>\n";
            if (p == 0) {
                out << "<line x1=\"" << x0 - 4 << "\" y1=\"" << py(fy) << "\" x2=\"" << x0
                    << "\" y2=\"" << py(fy) << "\" stroke=\"#333333\"/>\n"
                    << "<text x=\"" << x0 - 7 << "\" y=\"" << py(fy) + 3
                    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
                    << format_double(fy) << "</text>\n";
            }
        }
        out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << py(0) + 32
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << report_field_name(spec.x_axis) << "</text>\n";

        for (int m = 0; m < 4; ++m) {
            std::string points;
            std::string markers;
            for (const auto& r : rows) {
                if (r.panel != p || r.n == 0) continue;
                const double vals[4] = {r.mean_f1_p, r.mean_f1_pa, r.mean_f1_kpa, r.mean_f1_ba};
                if (std::isnan(vals[m])) continue;
                const double cx = px(p, r.x_mid), cy = py(vals[m]);
                points += format_double(cx) + "," + format_double(cy) + " ";
                markers += "<circle cx=\"" + format_double(cx) + "\" cy=\"" + format_double(cy) +
                           "\" r=\"2.4\" fill=\"" + kColors[m] + "\"/>\n";
            }
            if (!points.empty()) {
                out << "<polyline fill=\"none\" stroke=\"" << kColors[m]
                    << "\" stroke-width=\"1.6\" points=\"" << points << "\"/>\n"
                    << markers;
            }
        }
    }

    // legend
    double lx = margin_l;
    const double ly = margin_t + panel_h + 38.0;
    for (int m = 0; m < 4; ++m) {
        out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << kColors[m]
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << lx + 27 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << kMetricNames[m]
            << "</text>\n";
        lx += 110.0;
    }
    out << "</svg>\n";
}

/// Single-panel plot of theory curves (one line per labelled series),
/// x in [x_min, x_max], y in [0,1].
inline void write_curves_svg(std::ostream& out, const std::string& title,
                             const std::string& x_label, double x_min, double x_max,
                             const std::vector<std::string>& names,
                             const std::vector<std::vector<double>>& xs,
                             const std::vector<std::vector<double>>& ys) {
    static const char* kPalette[8] = {"#d62728", "#2ca02c", "#1f77b4", "#ff7f0e",
                                      "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    const double panel_w = 480.0, panel_h = 340.0;
    const double margin_l = 52.0, margin_t = 48.0, margin_b = 70.0;
    const double fig_w = margin_l + panel_w + 24.0;
    const double fig_h = margin_t + panel_h + margin_b;
    const auto px = [&](double x) {
        return margin_l + (x - x_min) / (x_max - x_min) * panel_w;
    };
    const auto py = [&](double y) { return margin_t + (1.0 - y) * panel_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fig_w << "\" height=\""
        << fig_h << "\" viewBox=\"0 0 " << fig_w << ' ' << fig_h << "\">\n"
        << "<rect width=\"" << fig_w << "\" height=\"" << fig_h << "\" fill=\"white\"/>\n"
        << "<text x=\"" << fig_w / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\" font-weight=\"bold\">"
        << title << "</text>\n"
        << "<rect x=\"" << margin_l << "\" y=\"" << margin_t << "\" width=\"" << panel_w
        << "\" height=\"" << panel_h
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double fx = x_min + (x_max - x_min) * tick / 4.0;
        const double fy = tick / 4.0;
        out << "<text x=\"" << px(fx) << "\" y=\"" << py(0) + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << format_double(fx) << "</text>\n"
            << "<text x=\"" << margin_l - 7 << "\" y=\"" << py(fy) + 3
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << format_double(fy) << "</text>\n";
    }
    out << "<text x=\"" << margin_l + panel_w / 2 << "\" y=\"" << py(0) + 34
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << x_label
        << "</text>\n";
    for (std::size_t s = 0; s < names.size(); ++s) {
        std::string points;
        for (std::size_t i = 0; i < xs[s].size(); ++i)
            points += format_double(px(xs[s][i])) + "," + format_double(py(ys[s][i])) + " ";
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 8]
            << "\" stroke-width=\"1.6\" points=\"" << points << "\"/>\n";
    }
    double lx = margin_l;
    const double ly = margin_t + panel_h + 54.0;
    for (std::size_t s = 0; s < names.size(); ++s) {
        out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 20
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << kPalette[s % 8]
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << lx + 25 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << names[s] << "</text>\n";
        lx += 120.0;
    }
    out << "</svg>\n";
}

}  // namespace balanced_f1
