#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace abcmc::cli {

struct ChartSeries {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<ChartSeries> series;
};

/// Static SVG line chart with axes, ticks and a legend. Non-positive values
/// on a log axis are dropped.
std::string render_line_chart(const ChartSpec& spec);

/// Builds a chart from CSV columns, one series per distinct value of
/// `group_column` in order of first appearance, and writes it to `svg_path`.
void chart_from_csv(const std::filesystem::path& csv_path, const std::filesystem::path& svg_path,
                    const std::string& group_column, const std::string& x_column,
                    const std::string& y_column, ChartSpec spec);

}  // namespace abcmc::cli
