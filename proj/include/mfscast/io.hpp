#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mfs {

// fixed "%.12g" rendering so repeated runs emit identical bytes
std::string format_double(double v);

void write_text_file(const std::string& path, std::string_view content);

struct ChartSeries {
    std::string label;
    std::vector<double> values;
};

// minimal polyline chart (display plumbing only, nothing downstream reads it)
std::string svg_line_chart(const std::string& title, const std::vector<ChartSeries>& series);

}  // namespace mfs
