#pragma once

#include <string>
#include <vector>

namespace siegel::io {

struct Series {
    std::string name;
    std::vector<double> values;  // one per x point; NaN breaks the line
};

/// Standalone SVG 1.1 line plot: one polyline per series against x, axes
/// with tick labels, legend.  Byte-deterministic for fixed input.
std::string line_plot(const std::vector<double>& x, const std::vector<Series>& series,
                      const std::string& x_label);

}  // namespace siegel::io
