#pragma once

#include <string>
#include <vector>

namespace pioneer {

struct ChartSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;  // non-finite points break the line
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartSeries> series;
    bool log_y = false;
};

/// Standalone SVG document with axes, ticks and a legend.
std::string render_svg(const LineChart& chart);

}  // namespace pioneer
