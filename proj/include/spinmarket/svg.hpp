#pragma once

#include <string>
#include <vector>

namespace spinmarket {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

enum class PlotKind {
    series,   // polylines
    scatter,  // markers only
    stack,    // one polyline per level with a legend
};

/// Writes a standalone SVG (axes, ticks, labeled series) plus a sibling CSV
/// (`series,x,y`) of the plotted data next to it. Output bytes depend only
/// on the input.
void emit_plot(const std::vector<PlotSeries>& data, PlotKind kind,
               const std::string& path, const std::string& title = "",
               const std::string& x_label = "", const std::string& y_label = "");

}  // namespace spinmarket
