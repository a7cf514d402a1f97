#include "lwrvsl/io/csv.hpp"

#include <fmt/format.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lwrvsl::io {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("csv row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_number(row[i]);
    }
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto end = std::min(line.find(',', start), line.size());
      double v{};
      const auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + end, v);
      if (ec != std::errc{} || ptr != line.data() + end) throw std::runtime_error("csv: bad number in '" + line + "'");
      row.push_back(v);
      start = end + 1;
    }
    if (row.size() != t.header.size()) throw std::runtime_error("csv: row width does not match header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table wide_table(const std::vector<double>& times, const std::vector<double>& positions,
                 const std::vector<std::vector<double>>& frames, double scale) {
  if (times.size() != frames.size()) throw std::invalid_argument("wide_table: times and frames differ in length");
  Table t;
  t.header.reserve(positions.size() + 1);
  t.header.emplace_back("time_s");
  for (double z : positions) t.header.push_back("z_m=" + format_number(z));
  t.rows.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (frames[k].size() != positions.size()) throw std::invalid_argument("wide_table: frame width mismatch");
    std::vector<double> row;
    row.reserve(positions.size() + 1);
    row.push_back(times[k]);
    for (double v : frames[k]) row.push_back(v * scale);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace lwrvsl::io
