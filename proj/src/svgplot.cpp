#include "thrustgov/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "thrustgov/common.hpp"

namespace thrustgov {

namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void write_svg_chart(const SvgChart& chart, const std::string& path) {
    require(!chart.series.empty(), "svg chart needs at least one series");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : chart.series) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (chart.hline) {
        ymin = std::min(ymin, *chart.hline);
        ymax = std::max(ymax, *chart.hline);
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg: " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
        << kHeight << "' font-family='sans-serif' font-size='12'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='20' text-anchor='middle' font-size='15'>"
        << chart.title << "</text>\n";

    // Frame and ticks.
    out << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
        << "' height='" << plot_h << "' fill='none' stroke='#444'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1='" << px(xv) << "' y1='" << kMarginTop + plot_h << "' x2='" << px(xv)
            << "' y2='" << kMarginTop + plot_h + 5 << "' stroke='#444'/>\n";
        out << "<text x='" << px(xv) << "' y='" << kMarginTop + plot_h + 18
            << "' text-anchor='middle'>" << fmt(xv) << "</text>\n";
        out << "<line x1='" << kMarginLeft - 5 << "' y1='" << py(yv) << "' x2='" << kMarginLeft
            << "' y2='" << py(yv) << "' stroke='#444'/>\n";
        out << "<text x='" << kMarginLeft - 8 << "' y='" << py(yv) + 4
            << "' text-anchor='end'>" << fmt(yv) << "</text>\n";
    }
    out << "<text x='" << kMarginLeft + plot_w / 2 << "' y='" << kHeight - 10
        << "' text-anchor='middle'>" << chart.x_label << "</text>\n";
    out << "<text x='18' y='" << kMarginTop + plot_h / 2 << "' text-anchor='middle' "
        << "transform='rotate(-90 18 " << kMarginTop + plot_h / 2 << ")'>" << chart.y_label
        << "</text>\n";

    if (chart.hline) {
        out << "<line x1='" << px(xmin) << "' y1='" << py(*chart.hline) << "' x2='" << px(xmax)
            << "' y2='" << py(*chart.hline)
            << "' stroke='#000' stroke-dasharray='6,4' stroke-width='1.2'/>\n";
        if (!chart.hline_label.empty()) {
            out << "<text x='" << px(xmax) - 6 << "' y='" << py(*chart.hline) - 5
                << "' text-anchor='end'>" << chart.hline_label << "</text>\n";
        }
    }

    for (std::size_t si = 0; si < chart.series.size(); ++si) {
        const auto& s = chart.series[si];
        if (s.points.empty()) continue;
        // Decimate long traces; an SVG does not need 60k vertices.
        const std::size_t stride = std::max<std::size_t>(1, s.points.size() / 2000);
        out << "<polyline fill='none' stroke='" << kColors[si % 5]
            << "' stroke-width='1.3' points='";
        for (std::size_t k = 0; k < s.points.size(); k += stride) {
            out << fmt(px(s.points[k].first)) << ',' << fmt(py(s.points[k].second)) << ' ';
        }
        out << fmt(px(s.points.back().first)) << ',' << fmt(py(s.points.back().second));
        out << "'/>\n";
        out << "<text x='" << kMarginLeft + plot_w - 8 << "' y='"
            << kMarginTop + 16 + 16 * static_cast<double>(si) << "' text-anchor='end' fill='"
            << kColors[si % 5] << "'>" << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace thrustgov
