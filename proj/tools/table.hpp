#pragma once

// Long-format result tables: one (x, series, value) row per sample, with a parameter echo.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cvtp::cli {

struct Row {
  double x;
  std::string series;
  double value;
};

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;  // echoed in order
  std::vector<Row> rows;

  void param(const std::string& key, double value);
  void param(const std::string& key, const std::string& value);
  void add(double x, const std::string& series, double value) { rows.push_back({x, series, value}); }
};

/// 12 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double v);

/// Metadata comment line, header "x,series,value", then the rows.
void write_csv(const Table& t, std::ostream& out);

/// {"command", "parameters", "rows": [{"x", "series", "value"}]}; non-finite values become null.
void write_json(const Table& t, std::ostream& out);

}  // namespace cvtp::cli
