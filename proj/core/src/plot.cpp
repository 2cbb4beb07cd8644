#include "swpclock/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace swpclock {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
constexpr int kPaletteSize = 6;

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

struct AxisScale {
    bool log = false;
    double lo = 0.0, hi = 1.0; // in plot space (log10 if log)
    double p0 = 0.0, p1 = 1.0; // pixel range

    double to_plot(double v) const { return log ? std::log10(v) : v; }
    bool valid(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double pixel(double v) const {
        const double t = (to_plot(v) - lo) / (hi - lo);
        return p0 + t * (p1 - p0);
    }
};

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return ticks;
}

// Tick positions in plot space plus their labels in data space.
void make_ticks(const AxisScale& ax, std::vector<double>& pos, std::vector<std::string>& lab) {
    if (!ax.log) {
        for (double t : linear_ticks(ax.lo, ax.hi)) {
            pos.push_back(t);
            lab.push_back(fmt("%.6g", t));
        }
        return;
    }
    const int d0 = static_cast<int>(std::ceil(ax.lo - 1e-9));
    const int d1 = static_cast<int>(std::floor(ax.hi + 1e-9));
    if (d1 - d0 >= 1) {
        for (int d = d0; d <= d1; ++d) {
            pos.push_back(d);
            lab.push_back(fmt("%.6g", std::pow(10.0, d)));
        }
    } else {
        for (double t : linear_ticks(ax.lo, ax.hi)) {
            pos.push_back(t);
            lab.push_back(fmt("%.3g", std::pow(10.0, t)));
        }
    }
}

} // namespace

void write_svg(std::ostream& out, const std::vector<PlotSeries>& series,
               const PlotStyle& style) {
    const double W = style.width, H = style.height;
    const double ml = 78, mr = 24, mt = 46, mb = 58;

    AxisScale xs, ys;
    xs.log = style.logX;
    ys.log = style.logY;

    bool any = false;
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!xs.valid(x) || !ys.valid(y))
                continue;
            const double px = xs.to_plot(x), py = ys.to_plot(y);
            if (!any) {
                xlo = xhi = px;
                ylo = yhi = py;
                any = true;
            } else {
                xlo = std::min(xlo, px);
                xhi = std::max(xhi, px);
                ylo = std::min(ylo, py);
                yhi = std::max(yhi, py);
            }
        }
    if (!any) {
        xlo = ylo = 0;
        xhi = yhi = 1;
    }
    if (xhi - xlo < 1e-12) {
        xlo -= 0.5;
        xhi += 0.5;
    }
    if (yhi - ylo < 1e-12) {
        ylo -= 0.5;
        yhi += 0.5;
    }
    const double ypad = 0.04 * (yhi - ylo);
    ylo -= ypad;
    yhi += ypad;

    xs.lo = xlo; xs.hi = xhi; xs.p0 = ml; xs.p1 = W - mr;
    ys.lo = ylo; ys.hi = yhi; ys.p0 = H - mb; ys.p1 = mt; // y grows upward

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\""
        << style.height << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
    out << "<rect width=\"" << style.width << "\" height=\"" << style.height
        << "\" fill=\"white\"/>\n";

    // Frame and grid.
    std::vector<double> xt, yt;
    std::vector<std::string> xl, yl;
    make_ticks(xs, xt, xl);
    make_ticks(ys, yt, yl);

    for (std::size_t i = 0; i < xt.size(); ++i) {
        const double px = xs.p0 + (xt[i] - xs.lo) / (xs.hi - xs.lo) * (xs.p1 - xs.p0);
        out << "<line x1=\"" << fmt("%.2f", px) << "\" y1=\"" << fmt("%.2f", ys.p0)
            << "\" x2=\"" << fmt("%.2f", px) << "\" y2=\"" << fmt("%.2f", ys.p1)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt("%.2f", px) << "\" y=\"" << fmt("%.2f", ys.p0 + 18)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << xl[i] << "</text>\n";
    }
    for (std::size_t i = 0; i < yt.size(); ++i) {
        const double py = ys.p0 + (yt[i] - ys.lo) / (ys.hi - ys.lo) * (ys.p1 - ys.p0);
        out << "<line x1=\"" << fmt("%.2f", xs.p0) << "\" y1=\"" << fmt("%.2f", py)
            << "\" x2=\"" << fmt("%.2f", xs.p1) << "\" y2=\"" << fmt("%.2f", py)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt("%.2f", xs.p0 - 8) << "\" y=\"" << fmt("%.2f", py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << yl[i]
            << "</text>\n";
    }
    out << "<rect x=\"" << fmt("%.2f", xs.p0) << "\" y=\"" << fmt("%.2f", ys.p1) << "\" width=\""
        << fmt("%.2f", xs.p1 - xs.p0) << "\" height=\"" << fmt("%.2f", ys.p0 - ys.p1)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Series.
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % kPaletteSize];
        std::string path;
        bool pen = false;
        for (const auto& [x, y] : series[si].points) {
            if (!xs.valid(x) || !ys.valid(y)) {
                pen = false;
                continue;
            }
            path += pen ? " L " : " M ";
            path += fmt("%.2f", xs.pixel(x));
            path += ' ';
            path += fmt("%.2f", ys.pixel(y));
            pen = true;
        }
        if (!path.empty())
            out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.6\"/>\n";
    }

    // Legend (top-right, inside the frame).
    double ly = ys.p1 + 16;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % kPaletteSize];
        const double lx = xs.p1 - 180;
        out << "<line x1=\"" << fmt("%.2f", lx) << "\" y1=\"" << fmt("%.2f", ly - 4)
            << "\" x2=\"" << fmt("%.2f", lx + 26) << "\" y2=\"" << fmt("%.2f", ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fmt("%.2f", lx + 32) << "\" y=\"" << fmt("%.2f", ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(series[si].label) << "</text>\n";
        ly += 18;
    }

    // Title and axis labels.
    out << "<text x=\"" << fmt("%.2f", 0.5 * W) << "\" y=\"26\" font-family=\"sans-serif\" "
        << "font-size=\"15\" text-anchor=\"middle\">" << xml_escape(style.title) << "</text>\n";
    out << "<text x=\"" << fmt("%.2f", 0.5 * (xs.p0 + xs.p1)) << "\" y=\""
        << fmt("%.2f", H - 14) << "\" font-family=\"sans-serif\" font-size=\"13\" "
        << "text-anchor=\"middle\">" << xml_escape(style.xLabel) << "</text>\n";
    out << "<text x=\"20\" y=\"" << fmt("%.2f", 0.5 * (ys.p0 + ys.p1))
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 20 " << fmt("%.2f", 0.5 * (ys.p0 + ys.p1)) << ")\">"
        << xml_escape(style.yLabel) << "</text>\n";
    out << "</svg>\n";
}

} // namespace swpclock
