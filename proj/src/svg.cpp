#include "siegel/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace siegel::io {

namespace {

constexpr double kWidth = 800.0, kHeight = 500.0;
constexpr double kLeft = 70.0, kRight = 640.0, kTop = 30.0, kBottom = 460.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(const char* pattern, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string line_plot(const std::vector<double>& x, const std::vector<Series>& series,
                      const std::string& x_label) {
    if (x.empty() || series.empty())
        throw std::invalid_argument("line_plot: empty data");
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (double v : x) {
        if (!std::isfinite(v))
            continue;
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const Series& s : series) {
        if (s.values.size() != x.size())
            throw std::invalid_argument("line_plot: series length mismatch");
        for (double v : s.values) {
            if (!std::isfinite(v))
                continue;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin))
        throw std::invalid_argument("line_plot: no finite data");
    if (xmax - xmin < 1e-300) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (ymax - ymin < 1e-300) {
        ymin -= 1.0;
        ymax += 1.0;
    }

    auto px = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * (kRight - kLeft); };
    auto py = [&](double v) { return kBottom - (v - ymin) / (ymax - ymin) * (kBottom - kTop); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           fmt("%.0f", kWidth) + "\" height=\"" + fmt("%.0f", kHeight) + "\" viewBox=\"0 0 " +
           fmt("%.0f", kWidth) + " " + fmt("%.0f", kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
           fmt("%.0f", kHeight) + "\" fill=\"white\"/>\n";

    // Axes with 5 ticks per direction.
    svg += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<path d=\"M " + fmt("%.2f", kLeft) + " " + fmt("%.2f", kTop) + " V " +
           fmt("%.2f", kBottom) + " H " + fmt("%.2f", kRight) + "\"/>\n";
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (int i = 0; i < 5; ++i) {
        double xv = xmin + i * (xmax - xmin) / 4.0;
        double yv = ymin + i * (ymax - ymin) / 4.0;
        double xp = px(xv), yp = py(yv);
        svg += "<line x1=\"" + fmt("%.2f", xp) + "\" y1=\"" + fmt("%.2f", kBottom) +
               "\" x2=\"" + fmt("%.2f", xp) + "\" y2=\"" + fmt("%.2f", kBottom + 5.0) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", xp) + "\" y=\"" + fmt("%.2f", kBottom + 18.0) +
               "\" text-anchor=\"middle\">" + fmt("%.6g", xv) + "</text>\n";
        svg += "<line x1=\"" + fmt("%.2f", kLeft - 5.0) + "\" y1=\"" + fmt("%.2f", yp) +
               "\" x2=\"" + fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", yp) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", kLeft - 8.0) + "\" y=\"" + fmt("%.2f", yp + 4.0) +
               "\" text-anchor=\"end\">" + fmt("%.6g", yv) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.2f", 0.5 * (kLeft + kRight)) + "\" y=\"" +
           fmt("%.2f", kHeight - 10.0) + "\" text-anchor=\"middle\">" + escape_xml(x_label) +
           "</text>\n";
    svg += "</g>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
        std::string points;
        bool pen_down = false;
        std::string path;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double xv = x[i], yv = series[si].values[i];
            if (!std::isfinite(xv) || !std::isfinite(yv)) {
                pen_down = false;
                continue;
            }
            path += pen_down ? " L " : " M ";
            path += fmt("%.2f", px(xv)) + " " + fmt("%.2f", py(yv));
            pen_down = true;
        }
        svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
        double ly = kTop + 16.0 * static_cast<double>(si);
        svg += "<line x1=\"" + fmt("%.2f", kRight + 14.0) + "\" y1=\"" + fmt("%.2f", ly) +
               "\" x2=\"" + fmt("%.2f", kRight + 38.0) + "\" y2=\"" + fmt("%.2f", ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        svg += "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" +
               fmt("%.2f", kRight + 44.0) + "\" y=\"" + fmt("%.2f", ly + 4.0) + "\">" +
               escape_xml(series[si].name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace siegel::io
