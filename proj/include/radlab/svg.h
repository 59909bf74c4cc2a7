// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#ifndef RADLAB_SVG_H
#define RADLAB_SVG_H

#include <string>
#include <vector>

namespace radlab {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool lines = true; // false = scatter markers only
};

// Minimal SVG line/scatter plot: axes, ticks, legend. CSV files carry the
// data contract; these are eyeball aids only.
void write_svg_plot(const std::string &path, const std::vector<PlotSeries> &series,
                    const PlotOptions &options);

} // namespace radlab

#endif
