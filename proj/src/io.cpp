#include "mfscast/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "mfscast/errors.hpp"

namespace mfs {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing file: " + path);
}

std::string svg_line_chart(const std::string& title, const std::vector<ChartSeries>& series) {
    constexpr int kWidth = 800, kHeight = 400, kPad = 50;
    const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::size_t longest = 0;
    for (const auto& s : series) {
        longest = std::max(longest, s.values.size());
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\">\n";
    svg += "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
    svg += "<text x=\"400\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + title +
           "</text>\n";
    if (longest >= 2 && lo < hi) {
        const auto x_of = [&](std::size_t i, std::size_t n) {
            return kPad + (kWidth - 2.0 * kPad) * static_cast<double>(i) / (n - 1);
        };
        const auto y_of = [&](double v) {
            return kHeight - kPad - (kHeight - 2.0 * kPad) * (v - lo) / (hi - lo);
        };
        for (std::size_t si = 0; si < series.size(); ++si) {
            const auto& s = series[si];
            if (s.values.size() < 2) continue;
            const char* color = kColors[si % 5];
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.values.size(); ++i) {
                svg += format_double(x_of(i, s.values.size())) + "," +
                       format_double(y_of(s.values[i])) + " ";
            }
            svg += "\"/>\n";
            svg += "<text x=\"" + format_double(kWidth - kPad + 4) + "\" y=\"" +
                   format_double(y_of(s.values.back())) + "\" font-size=\"11\" fill=\"" + color +
                   "\">" + s.label + "</text>\n";
        }
        svg += "<text x=\"6\" y=\"" + format_double(kHeight - kPad) + "\" font-size=\"10\">" +
               format_double(lo) + "</text>\n";
        svg += "<text x=\"6\" y=\"" + format_double(static_cast<double>(kPad)) +
               "\" font-size=\"10\">" + format_double(hi) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace mfs
