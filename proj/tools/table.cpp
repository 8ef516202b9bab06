#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

namespace cvtp::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Table::param(const std::string& key, double value) {
  parameters.emplace_back(key, format_number(value));
}

void Table::param(const std::string& key, const std::string& value) {
  parameters.emplace_back(key, value);
}

void write_csv(const Table& t, std::ostream& out) {
  out << "# command=" << t.command;
  for (const auto& [k, v] : t.parameters) out << ' ' << k << '=' << v;
  out << "\nx,series,value\n";
  for (const Row& r : t.rows) {
    out << format_number(r.x) << ',' << r.series << ',' << format_number(r.value) << '\n';
  }
}

namespace {

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  // Round through the 12-digit text so JSON and CSV carry the same values.
  return std::stod(format_number(v));
}

}  // namespace

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = t.command;
  doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.parameters) doc["parameters"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const Row& r : t.rows) {
    doc["rows"].push_back({{"x", number(r.x)}, {"series", r.series}, {"value", number(r.value)}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cvtp::cli
