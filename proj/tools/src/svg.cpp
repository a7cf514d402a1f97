#include "lwrvsl/io/svg.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lwrvsl::io {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 130;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr std::size_t kMaxColumns = 200;
constexpr std::size_t kMaxRows = 240;

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

std::string hex(Rgb c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

std::string tick(double v) { return fmt::format("{:.4g}", v); }

struct Range {
  double lo{std::numeric_limits<double>::infinity()};
  double hi{-std::numeric_limits<double>::infinity()};

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Flat ranges get a nominal width so the mapping stays finite.
  void widen() {
    if (!(hi > lo)) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.01;
      lo -= pad;
      hi += pad;
    }
  }
};

void header(std::ostream& out, const PlotLabels& labels) {
  fmt::print(out,
             "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
             "font-family=\"sans-serif\" font-size=\"12\">\n",
             kWidth, kHeight);
  fmt::print(out, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  fmt::print(out, "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
             kLeft + (kWidth - kLeft - kRight) / 2, escape(labels.title));
}

void axes(std::ostream& out, const Range& xr, const Range& yr, const PlotLabels& labels) {
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  fmt::print(out, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop,
             pw, ph);
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    const double x = kLeft + f * pw;
    const double y = kTop + ph - f * ph;
    fmt::print(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", x, kTop + ph, kTop + ph + 5);
    fmt::print(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", x, kTop + ph + 18,
               tick(xr.lo + f * (xr.hi - xr.lo)));
    fmt::print(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft - 5, y, kLeft);
    fmt::print(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLeft - 8, y + 4,
               tick(yr.lo + f * (yr.hi - yr.lo)));
  }
  fmt::print(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + pw / 2, kHeight - 18,
             escape(labels.x_label));
  fmt::print(out, "<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0})\">{1}</text>\n",
             kTop + ph / 2, escape(labels.y_label));
}

}  // namespace

const std::array<Rgb, 64>& colormap() {
  static const std::array<Rgb, 64> table = [] {
    // Anchor colours sampled from viridis at tenths.
    constexpr std::array<std::array<double, 3>, 10> anchors{{{68, 1, 84},
                                                             {72, 40, 120},
                                                             {62, 73, 137},
                                                             {49, 104, 142},
                                                             {38, 130, 142},
                                                             {31, 158, 137},
                                                             {53, 183, 121},
                                                             {110, 206, 88},
                                                             {181, 222, 43},
                                                             {253, 231, 37}}};
    std::array<Rgb, 64> t{};
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double s = static_cast<double>(i) / 63.0 * 9.0;
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(s), 8);
      const double f = s - static_cast<double>(k);
      const auto mix = [&](int c) {
        return static_cast<std::uint8_t>(std::lround(anchors[k][c] + f * (anchors[k + 1][c] - anchors[k][c])));
      };
      t[i] = {mix(0), mix(1), mix(2)};
    }
    return t;
  }();
  return table;
}

Rgb color_for(double value, double lo, double hi) {
  const auto& map = colormap();
  if (!(hi > lo)) return map[map.size() / 2];
  const double f = std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
  return map[std::min<std::size_t>(static_cast<std::size_t>(f * 64.0), 63)];
}

void write_heatmap_svg(std::ostream& out, const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<std::vector<double>>& values, const PlotLabels& labels) {
  if (x.empty() || y.empty() || values.size() != y.size()) throw std::invalid_argument("heatmap: bad dimensions");
  Range xr, yr, vr;
  for (double v : x) xr.add(v);
  for (double v : y) yr.add(v);
  for (const auto& row : values) {
    if (row.size() != x.size()) throw std::invalid_argument("heatmap: row width mismatch");
    for (double v : row) vr.add(v);
  }
  xr.widen();
  yr.widen();
  vr.widen();

  header(out, labels);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const std::size_t cs = (x.size() + kMaxColumns - 1) / kMaxColumns;
  const std::size_t rs = (y.size() + kMaxRows - 1) / kMaxRows;
  const std::size_t nc = (x.size() + cs - 1) / cs;
  const std::size_t nr = (y.size() + rs - 1) / rs;
  const double cw = pw / static_cast<double>(nc);
  const double rh = ph / static_cast<double>(nr);
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < nr; ++r) {
    const auto& row = values[r * rs];
    const double top = kTop + ph - static_cast<double>(r + 1) * rh;
    for (std::size_t c = 0; c < nc; ++c) {
      fmt::print(out, "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                 kLeft + static_cast<double>(c) * cw, top, cw + 0.05, rh + 0.05,
                 hex(color_for(row[c * cs], vr.lo, vr.hi)));
    }
  }
  out << "</g>\n";
  axes(out, xr, yr, labels);

  // Colour bar.
  const double bx = kWidth - kRight + 20;
  const auto& map = colormap();
  const double sh = ph / static_cast<double>(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    fmt::print(out, "<rect x=\"{}\" y=\"{:.2f}\" width=\"18\" height=\"{:.2f}\" fill=\"{}\"/>\n", bx,
               kTop + ph - static_cast<double>(i + 1) * sh, sh + 0.05, hex(map[i]));
  }
  fmt::print(out, "<text x=\"{}\" y=\"{}\">{}</text>\n", bx + 22, kTop + ph, tick(vr.lo));
  fmt::print(out, "<text x=\"{}\" y=\"{}\">{}</text>\n", bx + 22, kTop + 10, tick(vr.hi));
  fmt::print(out, "<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", bx - 4, kTop - 8,
             escape(labels.value_label));
  out << "</svg>\n";
}

void write_line_plot_svg(std::ostream& out, const std::vector<LineSeries>& series, const PlotLabels& labels) {
  if (series.empty()) throw std::invalid_argument("line plot: no series");
  Range xr, yr;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("line plot: x and y differ in length");
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.widen();
  yr.widen();

  header(out, labels);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const double f = series.size() == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(series.size() - 1);
    const std::string colour = hex(colormap()[static_cast<std::size_t>(f * 56.0)]);
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << colour << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      fmt::print(out, "{:.2f},{:.2f} ", kLeft + (s.x[i] - xr.lo) / (xr.hi - xr.lo) * pw,
                 kTop + ph - (s.y[i] - yr.lo) / (yr.hi - yr.lo) * ph);
    }
    out << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(k);
    fmt::print(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
               kWidth - kRight + 10, ly, kWidth - kRight + 30, colour);
    fmt::print(out, "<text x=\"{}\" y=\"{}\">{}</text>\n", kWidth - kRight + 34, ly + 4, escape(s.label));
  }
  axes(out, xr, yr, labels);
  out << "</svg>\n";
}

}  // namespace lwrvsl::io
