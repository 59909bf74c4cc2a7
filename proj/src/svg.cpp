// radlab is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "radlab/svg.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace radlab {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginL = 70, kMarginR = 160, kMarginT = 40, kMarginB = 55;

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::string &path, const std::vector<PlotSeries> &series,
                    const PlotOptions &options) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open svg file: " + path);

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto &s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            double xv = options.log_x ? std::log10(std::max(x, 1e-300)) : x;
            xmin = std::min(xmin, xv); xmax = std::max(xmax, xv);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) {
        double xv = options.log_x ? std::log10(std::max(x, 1e-300)) : x;
        return kMarginL + (xv - xmin) / (xmax - xmin) * (kWidth - kMarginL - kMarginR);
    };
    auto py = [&](double y) {
        return kHeight - kMarginB - (y - ymin) / (ymax - ymin) * (kHeight - kMarginT - kMarginB);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << options.title << "</text>\n";

    // Axes
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kHeight - kMarginB << "\" x2=\""
        << kWidth - kMarginR << "\" y2=\"" << kHeight - kMarginB
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
        << "\" y2=\"" << kHeight - kMarginB << "\" stroke=\"black\"/>\n";

    const int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        double fx = xmin + (xmax - xmin) * i / kTicks;
        double label = options.log_x ? std::pow(10.0, fx) : fx;
        double x = kMarginL + (fx - xmin) / (xmax - xmin) * (kWidth - kMarginL - kMarginR);
        out << "<line x1=\"" << x << "\" y1=\"" << kHeight - kMarginB << "\" x2=\"" << x
            << "\" y2=\"" << kHeight - kMarginB + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << kHeight - kMarginB + 18
            << "\" text-anchor=\"middle\">" << fmt(label) << "</text>\n";

        double fy = ymin + (ymax - ymin) * i / kTicks;
        double y = py(fy);
        out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << y << "\" x2=\"" << kMarginL
            << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
    }
    out << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << options.x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kMarginT + kHeight - kMarginB) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (kMarginT + kHeight - kMarginB) / 2 << ")\">" << options.y_label << "</text>\n";

    for (size_t si = 0; si < series.size(); ++si) {
        const char *color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const auto &pts = series[si].points;
        if (options.lines && pts.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (auto [x, y] : pts)
                if (std::isfinite(x) && std::isfinite(y)) out << px(x) << "," << py(y) << " ";
            out << "\"/>\n";
        }
        for (auto [x, y] : pts)
            if (std::isfinite(x) && std::isfinite(y))
                out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\""
                    << color << "\"/>\n";
        // Legend
        double ly = kMarginT + 18.0 * si;
        out << "<rect x=\"" << kWidth - kMarginR + 14 << "\" y=\"" << ly << "\" width=\"12\" " <<
            "height=\"12\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << kWidth - kMarginR + 32 << "\" y=\"" << ly + 10 << "\">"
            << series[si].label << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace radlab
