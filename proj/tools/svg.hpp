#pragma once

// Minimal static SVG charts: labelled bar charts and 2-D scatters.

#include <string>
#include <vector>

namespace compkern::cli {

std::string bar_chart_svg(const std::vector<std::string>& labels, const std::vector<double>& values,
                          const std::string& title);

// groups may be empty; otherwise one group index per point picks the colour.
std::string scatter_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<std::size_t>& groups, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

}  // namespace compkern::cli
