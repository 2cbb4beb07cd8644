#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace swpclock {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotStyle {
    std::string title;
    std::string xLabel;
    std::string yLabel;
    bool logX = false;
    bool logY = false;
    int width = 880;
    int height = 560;
};

/// Self-contained SVG line plot: axes, tick labels, grid, legend. No
/// external renderer; output is deterministic for identical inputs.
/// Non-finite points (and non-positive ones on log axes) are skipped,
/// breaking the polyline there.
void write_svg(std::ostream& out, const std::vector<PlotSeries>& series,
               const PlotStyle& style);

} // namespace swpclock
