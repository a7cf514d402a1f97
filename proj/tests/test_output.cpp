#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "lwrvsl/io/csv.hpp"
#include "lwrvsl/io/svg.hpp"

using namespace lwrvsl::io;

namespace {

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("CSV round trip is exact") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> bits;
  Table t{{"time_s", "a", "b", "c"}, {}};
  for (int r = 0; r < 500; ++r) {
    std::vector<double> row;
    for (int c = 0; c < 4; ++c) {
      double v = 0;
      do {
        v = std::bit_cast<double>(bits(rng));
      } while (!std::isfinite(v));
      row.push_back(v);
    }
    t.rows.push_back(row);
  }
  t.rows.push_back({0.0, -0.0, std::numeric_limits<double>::denorm_min(), 0.1});

  std::stringstream ss;
  write_csv(ss, t);
  const Table back = read_csv(ss);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) CHECK(back.rows[r] == t.rows[r]);
}

TEST_CASE("CSV layout") {
  std::ostringstream os;
  write_csv(os, {{"time_s", "x"}, {{0.5, 2.0}}});
  CHECK(os.str() == "time_s,x\n0.5,2\n");

  const Table w = wide_table({0, 1}, {2.5, 7.5}, {{0.05, 0.06}, {0.07, 0.08}}, 1000);
  CHECK(w.header == std::vector<std::string>{"time_s", "z_m=2.5", "z_m=7.5"});
  CHECK(w.rows[1][0] == 1.0);
  CHECK(w.rows[1][2] == doctest::Approx(80.0));

  std::istringstream bad("time_s,x\n1,abc\n");
  CHECK_THROWS(read_csv(bad));
  std::istringstream ragged("time_s,x\n1\n");
  CHECK_THROWS(read_csv(ragged));
}

TEST_CASE("colormap") {
  const auto& map = colormap();
  CHECK(map.size() == 64);
  const Rgb lo = map.front();
  const Rgb hi = map.back();
  CHECK(lo.b > lo.g);
  CHECK(hi.r > 200);
  CHECK(hi.g > 200);
  const Rgb a = color_for(-5.0, 0.0, 1.0);
  CHECK((a.r == lo.r && a.g == lo.g && a.b == lo.b));
  const Rgb b = color_for(5.0, 0.0, 1.0);
  CHECK((b.r == hi.r && b.g == hi.g && b.b == hi.b));
  const Rgb flat = color_for(1.0, 1.0, 1.0);
  CHECK((flat.r == map[32].r && flat.g == map[32].g && flat.b == map[32].b));
}

TEST_CASE("SVG documents are well formed") {
  std::vector<double> x(500), y(300);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = 0.5 * static_cast<double>(k);
  std::vector<std::vector<double>> v(y.size(), std::vector<double>(x.size()));
  for (std::size_t k = 0; k < y.size(); ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) v[k][i] = std::sin(0.01 * static_cast<double>(i * k));
  }
  std::ostringstream heat;
  write_heatmap_svg(heat, x, y, v, {"Density & <speed>", "z", "t", "cars/km"});
  const std::string h = heat.str();
  CHECK(h.rfind("<svg", 0) == 0);
  CHECK(h.find("</svg>") != std::string::npos);
  CHECK(h.find("Density &amp; &lt;speed&gt;") != std::string::npos);
  CHECK(count_of(h, "<rect") <= 200 * 240 + 64 + 4);

  std::ostringstream line;
  write_line_plot_svg(line, {{"a", {0, 1, 2}, {1, 2, 1}}, {"b", {0, 1, 2}, {0, 0, 0}}}, {"T", "x", "y", ""});
  const std::string l = line.str();
  CHECK(l.rfind("<svg", 0) == 0);
  CHECK(count_of(l, "<polyline") == 2);
  CHECK(count_of(l, "<svg") == count_of(l, "</svg>"));
}
