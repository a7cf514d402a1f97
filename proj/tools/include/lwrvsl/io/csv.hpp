#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lwrvsl::io {

/// Column-labelled numeric table. The first column is always time.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Values are printed with 17 significant digits so they parse back exactly.
std::string format_number(double v);

/// ',' separated, '\n' terminated, '.' decimal point.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// Wide layout: one row per time, one column per position labelled "z_m=<pos>".
Table wide_table(const std::vector<double>& times, const std::vector<double>& positions,
                 const std::vector<std::vector<double>>& frames, double scale = 1.0);

}  // namespace lwrvsl::io
