#include "ordex/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ordex {

namespace {

// 6 significant digits, locale-free.
std::string fmt6(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

std::string fmt_signed2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%+.2f", v);
    return buf;
}

std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Diverging map: -1 -> blue (#2166ac), 0 -> white, +1 -> red (#b2182b).
std::string diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    int r = 255, g = 255, b = 255;
    if (t >= 0.0) {
        r = static_cast<int>(std::lround(255.0 + t * (178.0 - 255.0)));
        g = static_cast<int>(std::lround(255.0 + t * (24.0 - 255.0)));
        b = static_cast<int>(std::lround(255.0 + t * (43.0 - 255.0)));
    } else {
        r = static_cast<int>(std::lround(255.0 - t * (33.0 - 255.0)));
        g = static_cast<int>(std::lround(255.0 - t * (102.0 - 255.0)));
        b = static_cast<int>(std::lround(255.0 - t * (172.0 - 255.0)));
    }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

struct Axis {
    double lo;
    double hi;
    double to_px(double v, double px_lo, double px_hi) const {
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

Axis padded_axis(double lo, double hi) {
    if (!(hi > lo)) {
        const double c = lo;
        return {c - 1.0, c + 1.0};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

constexpr const char* kRed = "#d62728";
constexpr const char* kBlue = "#1f77b4";

}  // namespace

std::string render_pair_scatter(const PairCloud& cloud, const std::optional<PairScore>& score,
                                const std::string& name_a, const std::string& name_b) {
    const double width = 560, height = 420;
    const double ml = 72, mr = 24, mt = 44, mb = 58;
    const double px0 = ml, px1 = width - mr;
    const double py0 = height - mb, py1 = mt;  // y axis grows upward

    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    bool first = true;
    for (const auto* arm : {&cloud.red, &cloud.blue}) {
        for (const auto& p : *arm) {
            if (first) {
                lo_x = hi_x = p.x;
                lo_y = hi_y = p.y;
                first = false;
            } else {
                lo_x = std::min(lo_x, p.x);
                hi_x = std::max(hi_x, p.x);
                lo_y = std::min(lo_y, p.y);
                hi_y = std::max(hi_y, p.y);
            }
        }
    }
    const Axis ax = padded_axis(lo_x, hi_x);
    const Axis ay = padded_axis(lo_y, hi_y);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt6(width) << "\" height=\""
        << fmt6(height) << "\" viewBox=\"0 0 " << fmt6(width) << ' ' << fmt6(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt6(ml) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
           "font-weight=\"bold\">"
        << escape_xml(name_a) << " vs " << escape_xml(name_b) << "</text>\n";

    // axes
    svg << "<line x1=\"" << fmt6(px0) << "\" y1=\"" << fmt6(py0) << "\" x2=\"" << fmt6(px1)
        << "\" y2=\"" << fmt6(py0) << "\" stroke=\"#333\"/>\n";
    svg << "<line x1=\"" << fmt6(px0) << "\" y1=\"" << fmt6(py0) << "\" x2=\"" << fmt6(px0)
        << "\" y2=\"" << fmt6(py1) << "\" stroke=\"#333\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = ax.lo + (ax.hi - ax.lo) * i / 4.0;
        const double fy = ay.lo + (ay.hi - ay.lo) * i / 4.0;
        const double tx = ax.to_px(fx, px0, px1);
        const double ty = ay.to_px(fy, py0, py1);
        svg << "<line x1=\"" << fmt6(tx) << "\" y1=\"" << fmt6(py0) << "\" x2=\"" << fmt6(tx)
            << "\" y2=\"" << fmt6(py0 + 5) << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << fmt6(tx) << "\" y=\"" << fmt6(py0 + 19)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << fmt6(fx)
            << "</text>\n";
        svg << "<line x1=\"" << fmt6(px0 - 5) << "\" y1=\"" << fmt6(ty) << "\" x2=\"" << fmt6(px0)
            << "\" y2=\"" << fmt6(ty) << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << fmt6(px0 - 8) << "\" y=\"" << fmt6(ty + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fmt6(fy)
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt6((px0 + px1) / 2) << "\" y=\"" << fmt6(height - 14)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << escape_xml(name_a) << " MSE reduction</text>\n";
    svg << "<text x=\"20\" y=\"" << fmt6((py0 + py1) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << fmt6((py0 + py1) / 2) << ")\">" << escape_xml(name_b) << " MSE reduction</text>\n";

    for (std::size_t i = 0; i < cloud.red.size(); ++i)
        svg << "<circle cx=\"" << fmt6(ax.to_px(cloud.red[i].x, px0, px1)) << "\" cy=\""
            << fmt6(ay.to_px(cloud.red[i].y, py0, py1)) << "\" r=\"3\" fill=\"" << kRed
            << "\" fill-opacity=\"0.7\"/>\n";
    for (std::size_t i = 0; i < cloud.blue.size(); ++i)
        svg << "<circle cx=\"" << fmt6(ax.to_px(cloud.blue[i].x, px0, px1)) << "\" cy=\""
            << fmt6(ay.to_px(cloud.blue[i].y, py0, py1)) << "\" r=\"3\" fill=\"" << kBlue
            << "\" fill-opacity=\"0.7\"/>\n";

    // legend + score annotation
    svg << "<circle cx=\"" << fmt6(px1 - 150) << "\" cy=\"" << fmt6(mt + 14) << "\" r=\"4\" fill=\""
        << kRed << "\"/>\n";
    svg << "<text x=\"" << fmt6(px1 - 142) << "\" y=\"" << fmt6(mt + 18)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(name_a)
        << " added first</text>\n";
    svg << "<circle cx=\"" << fmt6(px1 - 150) << "\" cy=\"" << fmt6(mt + 32) << "\" r=\"4\" fill=\""
        << kBlue << "\"/>\n";
    svg << "<text x=\"" << fmt6(px1 - 142) << "\" y=\"" << fmt6(mt + 36)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(name_b)
        << " added first</text>\n";
    if (score) {
        svg << "<text x=\"" << fmt6(px1) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
               "font-weight=\"bold\" text-anchor=\"end\">L = "
            << fmt_signed2(score->l_score) << "</text>\n";
    } else {
        svg << "<text x=\"" << fmt6(px1) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" "
               "fill=\"#888\" text-anchor=\"end\">insufficient data</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_heatmap(const MetricMatrix& metric) {
    const std::size_t n = metric.n;
    const double cell = 52.0;
    const double ml = 76, mt = 42;
    const double width = ml + cell * static_cast<double>(n) + 24;
    const double height = mt + cell * static_cast<double>(n) + 48;

    double scale = 1.0;
    if (metric.metric != "l_score" && metric.metric != "pearson")
        scale = std::max(metric.max_abs_off_diagonal(), 1e-12);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt6(width) << "\" height=\""
        << fmt6(height) << "\" viewBox=\"0 0 " << fmt6(width) << ' ' << fmt6(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt6(ml) << "\" y=\"26\" font-family=\"sans-serif\" font-size=\"15\" "
           "font-weight=\"bold\">"
        << escape_xml(metric.metric) << "</text>\n";

    for (std::size_t i = 0; i < n; ++i) {  // rows
        const double y = mt + cell * static_cast<double>(i);
        svg << "<text x=\"" << fmt6(ml - 8) << "\" y=\"" << fmt6(y + cell / 2 + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">"
            << escape_xml(metric.names[i]) << "</text>\n";
        for (std::size_t j = 0; j < i; ++j) {  // lower triangle only
            const double x = ml + cell * static_cast<double>(j);
            const double v = metric.at(i, j);
            const double t = v / scale;
            svg << "<rect id=\"cell_" << i << '_' << j << "\" x=\"" << fmt6(x) << "\" y=\""
                << fmt6(y) << "\" width=\"" << fmt6(cell) << "\" height=\"" << fmt6(cell)
                << "\" fill=\"" << diverging_color(t) << "\" stroke=\"#ccc\"/>\n";
            svg << "<text x=\"" << fmt6(x + cell / 2) << "\" y=\"" << fmt6(y + cell / 2 + 4)
                << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\""
                << (std::fabs(t) > 0.55 ? "#ffffff" : "#111111") << "\">" << fmt2(v) << "</text>\n";
        }
    }
    for (std::size_t j = 0; j < n; ++j) {  // column labels along the bottom
        const double x = ml + cell * static_cast<double>(j);
        svg << "<text x=\"" << fmt6(x + cell / 2) << "\" y=\""
            << fmt6(mt + cell * static_cast<double>(n) + 18)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << escape_xml(metric.names[j]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace ordex
