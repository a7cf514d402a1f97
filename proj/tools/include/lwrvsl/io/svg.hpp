#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lwrvsl::io {

struct Rgb {
  std::uint8_t r, g, b;
};

/// Fixed 64-entry viridis-like map, dark purple (low) to yellow (high).
const std::array<Rgb, 64>& colormap();
Rgb color_for(double value, double lo, double hi);

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string value_label;  // heatmaps only
};

/// values[k][i] is drawn at (x[i], y[k]). Large grids are subsampled to at
/// most 200 x 240 blocks.
void write_heatmap_svg(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<std::vector<double>>& values, const PlotLabels& labels);

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_line_plot_svg(std::ostream& out, const std::vector<LineSeries>& series, const PlotLabels& labels);

}  // namespace lwrvsl::io
