#include "gausslink/heatmap.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace gausslink {

namespace {

constexpr double kPlotSize = 480.0;
constexpr double kMarginLeft = 90.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 70.0;
constexpr double kLegendWidth = 170.0;
constexpr const char* kNeutral = "#bdbdbd";

struct Rgb {
    double r, g, b;
};

// Viridis anchors, interpolated linearly.
constexpr std::array<Rgb, 5> kStops{{
    {68, 1, 84},
    {59, 82, 139},
    {33, 145, 140},
    {94, 201, 98},
    {253, 231, 37},
}};

std::string color_for(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * (kStops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), kStops.size() - 2);
    const double f = pos - static_cast<double>(i);
    const Rgb& a = kStops[i];
    const Rgb& b = kStops[i + 1];
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                  static_cast<int>(std::lround(a.g + f * (b.g - a.g))),
                  static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("heatmap: non-numeric cell '" + s + "'");
    }
    return v;
}

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_heatmap_svg(const std::string& csv_text, const std::string& metric) {
    std::vector<std::vector<std::string>> rows;
    for (const std::string& line : split(csv_text, '\n')) {
        if (!line.empty()) rows.push_back(split(line, ','));
    }
    if (rows.size() < 2) throw std::invalid_argument("heatmap: CSV has no data rows");
    const std::vector<std::string>& header = rows.front();
    const auto stable_it = std::find(header.begin(), header.end(), "stable");
    if (stable_it - header.begin() != 2) throw std::invalid_argument("heatmap: CSV must have exactly two axis columns");
    const auto metric_it = std::find(header.begin(), header.end(), metric);
    if (metric_it == header.end()) throw std::invalid_argument("heatmap: no column named '" + metric + "'");
    const auto metric_col = static_cast<std::size_t>(metric_it - header.begin());

    // Row-major grid: the second axis cycles fastest.
    const std::size_t n_data = rows.size() - 1;
    std::size_t nx = 1;
    while (nx < n_data && rows[1 + nx][0] == rows[1][0]) ++nx;
    if (n_data % nx != 0) throw std::invalid_argument("heatmap: CSV is not a complete grid");
    const std::size_t ny = n_data / nx;
    std::vector<std::string> x_labels(nx), y_labels(ny);
    for (std::size_t i = 0; i < nx; ++i) x_labels[i] = rows[1 + i][1];
    for (std::size_t j = 0; j < ny; ++j) y_labels[j] = rows[1 + j * nx][0];

    std::vector<std::optional<double>> values(n_data);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_data; ++k) {
        const auto& row = rows[1 + k];
        if (row.size() != header.size()) throw std::invalid_argument("heatmap: ragged CSV row");
        if (row[0] != y_labels[k / nx] || row[1] != x_labels[k % nx]) {
            throw std::invalid_argument("heatmap: CSV is not a row-major grid");
        }
        values[k] = to_double(row[metric_col]);
        if (values[k]) {
            lo = std::min(lo, *values[k]);
            hi = std::max(hi, *values[k]);
        }
    }
    const bool any = lo <= hi;

    const double cw = kPlotSize / static_cast<double>(nx);
    const double ch = kPlotSize / static_cast<double>(ny);
    const double width = kMarginLeft + kPlotSize + kLegendWidth;
    const double height = kMarginTop + kPlotSize + kMarginBottom;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt("%.0f", width) << "\" height=\""
        << fmt("%.0f", height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<text x=\"" << fmt("%.1f", kMarginLeft + kPlotSize / 2) << "\" y=\"24\" text-anchor=\"middle\">"
        << escape(metric) << "</text>\n";
    svg << "<g shape-rendering=\"crispEdges\">\n";
    for (std::size_t k = 0; k < n_data; ++k) {
        const std::size_t i = k % nx;
        const std::size_t j = k / nx;
        const double x = kMarginLeft + static_cast<double>(i) * cw;
        const double y = kMarginTop + kPlotSize - static_cast<double>(j + 1) * ch;
        std::string color = kNeutral;
        if (values[k]) color = color_for(hi > lo ? (*values[k] - lo) / (hi - lo) : 0.5);
        svg << "<rect x=\"" << fmt("%.3f", x) << "\" y=\"" << fmt("%.3f", y) << "\" width=\"" << fmt("%.3f", cw)
            << "\" height=\"" << fmt("%.3f", ch) << "\" fill=\"" << color << "\"/>\n";
    }
    svg << "</g>\n";

    const double plot_bottom = kMarginTop + kPlotSize;
    svg << "<rect x=\"" << fmt("%.1f", kMarginLeft) << "\" y=\"" << fmt("%.1f", kMarginTop) << "\" width=\""
        << fmt("%.1f", kPlotSize) << "\" height=\"" << fmt("%.1f", kPlotSize)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt("%.1f", kMarginLeft) << "\" y=\"" << fmt("%.1f", plot_bottom + 16) << "\">"
        << escape(x_labels.front()) << "</text>\n";
    svg << "<text x=\"" << fmt("%.1f", kMarginLeft + kPlotSize) << "\" y=\"" << fmt("%.1f", plot_bottom + 16)
        << "\" text-anchor=\"end\">" << escape(x_labels.back()) << "</text>\n";
    svg << "<text x=\"" << fmt("%.1f", kMarginLeft + kPlotSize / 2) << "\" y=\"" << fmt("%.1f", plot_bottom + 40)
        << "\" text-anchor=\"middle\">" << escape(header[1]) << "</text>\n";
    svg << "<text x=\"" << fmt("%.1f", kMarginLeft - 6) << "\" y=\"" << fmt("%.1f", plot_bottom)
        << "\" text-anchor=\"end\">" << escape(y_labels.front()) << "</text>\n";
    svg << "<text x=\"" << fmt("%.1f", kMarginLeft - 6) << "\" y=\"" << fmt("%.1f", kMarginTop + 12)
        << "\" text-anchor=\"end\">" << escape(y_labels.back()) << "</text>\n";
    svg << "<text transform=\"translate(24," << fmt("%.1f", kMarginTop + kPlotSize / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(header[0]) << "</text>\n";

    const double lx = kMarginLeft + kPlotSize + 30;
    const double bar_h = 200.0;
    const int steps = 50;
    for (int s = 0; s < steps; ++s) {
        const double t = (s + 0.5) / steps;
        svg << "<rect x=\"" << fmt("%.1f", lx) << "\" y=\"" << fmt("%.3f", kMarginTop + bar_h * (1.0 - (s + 1.0) / steps))
            << "\" width=\"20\" height=\"" << fmt("%.3f", bar_h / steps) << "\" fill=\"" << color_for(t) << "\"/>\n";
    }
    const std::string max_text = any ? fmt("%.6g", hi) : std::string("n/a");
    const std::string min_text = any ? fmt("%.6g", lo) : std::string("n/a");
    svg << "<text x=\"" << fmt("%.1f", lx + 26) << "\" y=\"" << fmt("%.1f", kMarginTop + 10) << "\">max = "
        << max_text << "</text>\n";
    svg << "<text x=\"" << fmt("%.1f", lx + 26) << "\" y=\"" << fmt("%.1f", kMarginTop + bar_h) << "\">min = "
        << min_text << "</text>\n";
    svg << "<rect x=\"" << fmt("%.1f", lx) << "\" y=\"" << fmt("%.1f", kMarginTop + bar_h + 20)
        << "\" width=\"20\" height=\"12\" fill=\"" << kNeutral << "\"/>\n";
    svg << "<text x=\"" << fmt("%.1f", lx + 26) << "\" y=\"" << fmt("%.1f", kMarginTop + bar_h + 30)
        << "\">unstable</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

void emit_heatmap(const std::filesystem::path& csv, const std::string& metric, const std::filesystem::path& svg) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + csv.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    const std::string out = render_heatmap_svg(text.str(), metric);
    std::ofstream file(svg, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + svg.string() + "' for writing");
    file << out;
    if (!file) throw std::runtime_error("failed writing '" + svg.string() + "'");
}

}  // namespace gausslink
