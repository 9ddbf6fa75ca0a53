// SPDX-License-Identifier: Apache-2.0
#include <json.hpp>

#include <cstdio>
#include <ostream>

#include "fracbin/cli.hpp"

namespace fracbin::cli {
namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  os << "# schema: " << table.schema << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
    os << '\n';
  }
}

void write_json_lines(const Table& table, std::ostream& os) {
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    obj["schema"] = table.schema;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
    }
    os << obj.dump() << '\n';
  }
}

}  // namespace fracbin::cli
