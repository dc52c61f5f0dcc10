#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thrustgov {

/// Minimal self-contained SVG line chart, no external dependencies.
struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    std::optional<double> hline;       // horizontal marker (e.g. a bound)
    std::string hline_label;
};

void write_svg_chart(const SvgChart& chart, const std::string& path);

}  // namespace thrustgov
