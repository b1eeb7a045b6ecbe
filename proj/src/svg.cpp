#include "spinmarket/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "spinmarket/errors.hpp"
#include "spinmarket/format.hpp"

namespace spinmarket {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

// Round tick spacing to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0) nice = 1.0;
    else if (frac <= 2.0) nice = 2.0;
    else if (frac <= 5.0) nice = 5.0;
    return nice * mag;
}

}  // namespace

void emit_plot(const std::vector<PlotSeries>& data, PlotKind kind,
               const std::string& path, const std::string& title,
               const std::string& x_label, const std::string& y_label) {
    if (data.empty()) throw_validation("plot dataset is empty");
    for (const auto& s : data) {
        if (s.x.size() != s.y.size()) {
            throw_validation("plot series '" + s.label + "' has mismatched x/y");
        }
        if (s.x.empty()) throw_validation("plot series '" + s.label + "' is empty");
    }

    Extent ex, ey;
    for (const auto& s : data) {
        for (double v : s.x) ex.include(v);
        for (double v : s.y) ey.include(v);
    }
    ex.pad();
    ey.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double v) {
        return kMarginLeft + (v - ex.lo) / (ex.hi - ex.lo) * plot_w;
    };
    auto sy = [&](double v) {
        return kHeight - kMarginBottom - (v - ey.lo) / (ey.hi - ey.lo) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"" << kWidth / 2
            << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"16\">"
            << title << "</text>\n";
    }

    // Axes box and ticks.
    svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
        << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const double xstep = nice_step(ex.hi - ex.lo, 6);
    for (double t = std::ceil(ex.lo / xstep) * xstep; t <= ex.hi + 1e-12 * xstep;
         t += xstep) {
        const double px = sx(t);
        svg << "<line x1=\"" << format_g6(px) << "\" y1=\""
            << kHeight - kMarginBottom << "\" x2=\"" << format_g6(px) << "\" y2=\""
            << kHeight - kMarginBottom + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << format_g6(px) << "\" y=\""
            << kHeight - kMarginBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << format_g6(t) << "</text>\n";
    }
    const double ystep = nice_step(ey.hi - ey.lo, 6);
    for (double t = std::ceil(ey.lo / ystep) * ystep; t <= ey.hi + 1e-12 * ystep;
         t += ystep) {
        const double py = sy(t);
        svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << format_g6(py)
            << "\" x2=\"" << kMarginLeft << "\" y2=\"" << format_g6(py)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << format_g6(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_g6(t) << "</text>\n";
    }
    if (!x_label.empty()) {
        svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"13\">"
            << x_label << "</text>\n";
    }
    if (!y_label.empty()) {
        svg << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"13\" transform=\"rotate(-90 16 "
            << kMarginTop + plot_h / 2 << ")\">" << y_label << "</text>\n";
    }

    for (std::size_t si = 0; si < data.size(); ++si) {
        const auto& s = data[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (kind == PlotKind::scatter) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                svg << "<circle cx=\"" << format_g6(sx(s.x[i])) << "\" cy=\""
                    << format_g6(sy(s.y[i])) << "\" r=\"2\" fill=\"" << color
                    << "\"/>\n";
            }
        } else {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.2\" points=\"";
            bool first = true;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.y[i])) continue;
                if (!first) svg << ' ';
                svg << format_g6(sx(s.x[i])) << ',' << format_g6(sy(s.y[i]));
                first = false;
            }
            svg << "\"/>\n";
        }
        // Legend entry.
        if (!s.label.empty()) {
            const double ly = kMarginTop + 14.0 + 16.0 * static_cast<double>(si);
            svg << "<rect x=\"" << kMarginLeft + plot_w - 130 << "\" y=\""
                << format_g6(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
                << color << "\"/>\n";
            svg << "<text x=\"" << kMarginLeft + plot_w - 115 << "\" y=\""
                << format_g6(ly) << "\" font-family=\"sans-serif\" font-size=\"12\">"
                << s.label << "</text>\n";
        }
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw_io("cannot write '" + path + "'");
    out << svg.str();
    if (!out) throw_io("write failed for '" + path + "'");

    // Sibling CSV with the plotted data.
    const std::string csv_path = path + ".csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw_io("cannot write '" + csv_path + "'");
    csv << "series,x,y\n";
    for (const auto& s : data) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            csv << s.label << ',' << format_g17(s.x[i]) << ',' << format_g17(s.y[i])
                << '\n';
        }
    }
}

}  // namespace spinmarket
