#pragma once

#include <string>
#include <vector>

namespace qdw {

// One polyline of an SVG chart.
struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> y;
};

// Minimal deterministic line chart: the series share the x grid, axes are
// auto-scaled, a legend lists the labels. Returns the SVG document text.
std::string svg_line_chart(const std::string& title, const std::vector<double>& x,
                           const std::vector<SvgSeries>& series, int width = 900,
                           int height = 420);

} // namespace qdw
