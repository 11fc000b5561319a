#include "qdw/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qdw/errors.hpp"

namespace qdw {

namespace {

// Fixed shortish representation keeps the file compact and deterministic.
std::string fmt6(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

} // namespace

std::string svg_line_chart(const std::string& title, const std::vector<double>& x,
                           const std::vector<SvgSeries>& series, int width, int height) {
    if (x.size() < 2) throw invalid_input_error("svg chart needs at least 2 samples");
    for (const auto& s : series)
        if (s.y.size() != x.size())
            throw invalid_input_error("svg series '" + s.label + "' does not match the x grid");

    const double margin_l = 70, margin_r = 20, margin_t = 40, margin_b = 45;
    const double plot_w = width - margin_l - margin_r;
    const double plot_h = height - margin_t - margin_b;

    double xmin = x.front(), xmax = x.back();
    double ymin = 0, ymax = 1;
    if (!series.empty()) {
        ymin = series[0].y[0];
        ymax = ymin;
        for (const auto& s : series)
            for (double v : s.y) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
    }
    if (ymax - ymin <= 0) {
        ymax += 0.5;
        ymin -= 0.5;
    }
    if (xmax - xmin <= 0) xmax = xmin + 1;

    auto px = [&](double v) { return margin_l + (v - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double v) { return margin_t + (ymax - v) / (ymax - ymin) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt6(width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           title + "</text>\n";

    // Axes with min/max tick labels.
    svg += "<rect x=\"" + fmt6(margin_l) + "\" y=\"" + fmt6(margin_t) + "\" width=\"" +
           fmt6(plot_w) + "\" height=\"" + fmt6(plot_h) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    auto text = [&](double tx, double ty, const std::string& anchor, const std::string& body) {
        svg += "<text x=\"" + fmt6(tx) + "\" y=\"" + fmt6(ty) + "\" text-anchor=\"" + anchor +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + body + "</text>\n";
    };
    text(margin_l, height - margin_b + 16, "middle", fmt6(xmin));
    text(width - margin_r, height - margin_b + 16, "middle", fmt6(xmax));
    text(width / 2.0, height - margin_b + 32, "middle", "t (s)");
    text(margin_l - 6, py(ymin) + 4, "end", fmt6(ymin));
    text(margin_l - 6, py(ymax) + 4, "end", fmt6(ymax));

    for (const auto& s : series) {
        svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) svg += ' ';
            svg += fmt6(px(x[i]));
            svg += ',';
            svg += fmt6(py(s.y[i]));
        }
        svg += "\"/>\n";
    }

    double ly = margin_t + 16;
    for (const auto& s : series) {
        svg += "<line x1=\"" + fmt6(margin_l + 10) + "\" y1=\"" + fmt6(ly - 4) + "\" x2=\"" +
               fmt6(margin_l + 34) + "\" y2=\"" + fmt6(ly - 4) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"/>\n";
        text(margin_l + 40, ly, "start", s.label);
        ly += 16;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace qdw
