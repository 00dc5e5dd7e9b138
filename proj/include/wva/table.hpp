// Copyright 2026 The wva Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tabular datasets with a JSON metadata block. CSV output puts the metadata
// on a single `# `-prefixed line ahead of the header row; fields follow
// RFC 4180 quoting. Numbers are printed with 15 significant digits so reruns
// are byte-identical.

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wva/core.hpp"

namespace wva {

using Cell = std::variant<std::monostate, double, bool, std::string>;

inline Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw InvalidArgument("no column named " + name);
  }

  /// Numeric value of a cell, empty for null or non-numeric cells.
  std::optional<double> number(std::size_t row, const std::string& name) const {
    const auto& cell = rows.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    return std::nullopt;
  }
};

struct Dataset {
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  Table table;
};

namespace detail {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
  };
  return std::visit(Visitor{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return d;
    }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace detail

inline void write_csv(const Dataset& ds, std::ostream& os) {
  os << "# " << ds.metadata.dump() << "\r\n";
  for (std::size_t i = 0; i < ds.table.columns.size(); ++i)
    os << (i ? "," : "") << detail::csv_escape(ds.table.columns[i]);
  os << "\r\n";
  for (const auto& row : ds.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << detail::cell_text(row[i]);
    os << "\r\n";
  }
}

/// {"metadata": {...}, "rows": [{column: value, ...}, ...]}
inline nlohmann::ordered_json to_json(const Dataset& ds) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : ds.table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[ds.table.columns[i]] = detail::cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json out;
  out["metadata"] = ds.metadata;
  out["rows"] = std::move(rows);
  return out;
}

inline void write_json(const Dataset& ds, std::ostream& os) { os << to_json(ds).dump(2) << "\n"; }

}  // namespace wva
