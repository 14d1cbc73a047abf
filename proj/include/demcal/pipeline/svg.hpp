#ifndef DEMCAL_PIPELINE_SVG_HPP
#define DEMCAL_PIPELINE_SVG_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace demcal::pipeline {

struct PlotLabels {
    std::string title;
    std::string x;
    std::string y;
};

/// Standalone SVG: data as markers, `curve` (if any) drawn over the data
/// range, and an optional highlighted point such as an inverted measurement.
std::string scatter_svg(const PlotLabels& labels, const std::vector<double>& x, const std::vector<double>& y,
                        const std::function<double(double)>& curve = {},
                        std::optional<std::pair<double, double>> highlight = std::nullopt);

/// Standalone SVG of a polyline with markers.
std::string line_svg(const PlotLabels& labels, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace demcal::pipeline

#endif  // DEMCAL_PIPELINE_SVG_HPP
