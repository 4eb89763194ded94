#pragma once

#include <string>
#include <vector>

namespace capdyn {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained polyline chart. A convenience for eyeballing the CSV
/// outputs, not an acceptance surface.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace capdyn
