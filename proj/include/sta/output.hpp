#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sta {

// Numeric CSV with 17 significant digits per value, enough for exact
// double round trips, so repeated runs are byte-identical.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

// Small deterministic SVG line plot: fixed canvas, linear axes with five
// labelled ticks each, fixed palette, legend at the top right. No
// timestamps or generator tags, so output depends only on the data.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

}  // namespace sta
