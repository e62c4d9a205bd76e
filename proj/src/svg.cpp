#include "deltarad/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace deltarad::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

struct Range {
    double lo = 0, hi = 1;
    double map(double v, double a, double b) const {
        if (hi == lo) return 0.5 * (a + b);
        return a + (v - lo) / (hi - lo) * (b - a);
    }
};

}  // namespace

std::string km_plot(const std::vector<Series>& curves, const std::string& title) {
    const double w = 640, h = 420, ml = 60, mr = 20, mt = 40, mb = 50;
    Range xr{0, 1};
    for (const auto& c : curves)
        for (double x : c.x) xr.hi = std::max(xr.hi, x);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";

    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 5; ++tick) {
        const double fy = h - mb - (h - mb - mt) * tick / 5.0;
        out << "<text x=\"" << ml - 8 << "\" y=\"" << fy + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << num(tick / 5.0) << "</text>\n";
        const double fx = ml + (w - mr - ml) * tick / 5.0;
        out << "<text x=\"" << fx << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << num(xr.lo + (xr.hi - xr.lo) * tick / 5.0) << "</text>\n";
    }

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& c = curves[ci];
        const char* color = kPalette[ci % 8];
        std::ostringstream path;
        double px = ml, py = mt;  // S(0) = 1
        path << "M" << num(px) << "," << num(py);
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            const double sx = xr.map(c.x[i], ml, w - mr);
            const double sy = h - mb - c.y[i] * (h - mb - mt);
            path << " L" << num(sx) << "," << num(py) << " L" << num(sx) << "," << num(sy);
            py = sy;
        }
        path << " L" << num(w - mr) << "," << num(py);
        out << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << w - mr - 4 << "\" y=\"" << mt + 16 + 16 * static_cast<double>(ci)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << escape(c.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string small_multiples(const std::vector<Panel>& panels, const std::string& title) {
    const int cols = 5;
    const int rows = static_cast<int>((panels.size() + cols - 1) / cols);
    const double pw = 180, ph = 140, margin = 30;
    const double w = cols * pw + 2 * margin, h = rows * ph + 2 * margin + 20;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double ox = margin + (p % cols) * pw;
        const double oy = margin + 20 + (p / cols) * ph;
        Range xr{1e300, -1e300}, yr{1e300, -1e300};
        for (const auto& line : panels[p].lines)
            for (std::size_t i = 0; i < line.x.size(); ++i) {
                xr.lo = std::min(xr.lo, line.x[i]);
                xr.hi = std::max(xr.hi, line.x[i]);
                yr.lo = std::min(yr.lo, line.y[i]);
                yr.hi = std::max(yr.hi, line.y[i]);
            }
        if (xr.lo > xr.hi) {
            xr = {0, 1};
            yr = {0, 1};
        }
        out << "<rect x=\"" << ox + 6 << "\" y=\"" << oy + 14 << "\" width=\"" << pw - 16 << "\" height=\""
            << ph - 26 << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
        out << "<text x=\"" << ox + pw / 2 << "\" y=\"" << oy + 10
            << "\" text-anchor=\"middle\" font-size=\"9\">" << escape(panels[p].title) << "</text>\n";
        for (std::size_t li = 0; li < panels[p].lines.size(); ++li) {
            const auto& line = panels[p].lines[li];
            if (line.x.empty()) continue;
            std::ostringstream pts;
            for (std::size_t i = 0; i < line.x.size(); ++i) {
                const double sx = xr.map(line.x[i], ox + 8, ox + pw - 12);
                const double sy = oy + ph - 14 - (yr.hi == yr.lo ? 0.5 : (line.y[i] - yr.lo) / (yr.hi - yr.lo)) *
                                                     (ph - 30);
                pts << (i ? " " : "") << num(sx) << "," << num(sy);
            }
            const char* color = line.label == "median" ? "#000000" : kPalette[li % 8];
            out << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"" << (line.label == "median" ? "1.6" : "0.7") << "\" opacity=\""
                << (line.label == "median" ? "1.0" : "0.55") << "\"" << (line.label == "median" ? " stroke-dasharray=\"4,3\"" : "")
                << "/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string heatmap(const std::vector<std::string>& names, const std::vector<double>& matrix,
                    const std::string& title) {
    const std::size_t n = names.size();
    const double cell = std::max(6.0, std::min(18.0, 560.0 / std::max<std::size_t>(1, n)));
    const double ml = 200, mt = 60;
    const double w = ml + cell * static_cast<double>(n) + 30, h = mt + cell * static_cast<double>(n) + 30;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double r = matrix[i * n + j];
            int red = 255, green = 255, blue = 255;
            if (r >= 0) {
                green = blue = static_cast<int>(std::lround(255 * (1.0 - r)));
            } else {
                red = green = static_cast<int>(std::lround(255 * (1.0 + r)));
            }
            char color[8];
            std::snprintf(color, sizeof(color), "#%02x%02x%02x", red, green, blue);
            out << "<rect x=\"" << ml + cell * static_cast<double>(j) << "\" y=\"" << mt + cell * static_cast<double>(i)
                << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"" << color << "\"/>\n";
        }
    if (cell >= 8.0)
        for (std::size_t i = 0; i < n; ++i)
            out << "<text x=\"" << ml - 4 << "\" y=\"" << mt + cell * (static_cast<double>(i) + 0.7)
                << "\" text-anchor=\"end\" font-size=\"" << std::min(9.0, cell - 1) << "\">" << escape(names[i])
                << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace deltarad::svg
