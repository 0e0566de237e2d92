// Copyright 2026 The parklab Authors
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

// Result tables and their CSV / JSON-lines emission.
//
// A CSV file starts with '#' header lines carrying the code version, the
// resolved config, summary values, column units, a content hash and an
// optional timestamp. The hash is FNV-1a (64-bit) over every line except
// the hash and timestamp lines, so it is the same for both formats.

#ifndef PARKLAB_LAB_TABLE_HPP_
#define PARKLAB_LAB_TABLE_HPP_

#include <cstdint>
#include <ctime>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "parklab/geom/point_io.hpp"
#include "parklab/lab/config.hpp"

namespace parklab::lab {

inline constexpr const char* kVersion = "parklab 0.1.0";

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless, "-" for labels
};

struct ResultTable {
  ExperimentConfig config;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  void AddRow(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw Error("row width does not match the columns");
    rows.push_back(std::move(row));
  }
};

constexpr std::uint64_t Fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string CellText(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return io::FormatDouble(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return std::to_string(v);
      },
      c);
}

// RFC 4180 field quoting.
inline std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

namespace detail {

inline std::string JoinCsv(const std::vector<std::string>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + CsvField(f[i]);
  return s;
}

// Hashed header lines and the CSV body, without the hash itself.
inline std::vector<std::string> HashedLines(const ResultTable& t) {
  std::vector<std::string> lines;
  lines.push_back(std::string("# ") + kVersion);
  std::istringstream cfg(RenderConfig(t.config));
  for (std::string l; std::getline(cfg, l);) lines.push_back("# config " + l);
  for (const auto& [k, v] : t.summary) lines.push_back("# summary " + k + "=" + CellText(v));
  std::vector<std::string> names, units;
  for (const auto& c : t.columns) {
    names.push_back(c.name);
    units.push_back(c.name + "=" + c.unit);
  }
  lines.push_back("# units " + JoinCsv(units));
  lines.push_back(JoinCsv(names));
  for (const auto& r : t.rows) {
    std::vector<std::string> f;
    for (const auto& c : r) f.push_back(CellText(c));
    lines.push_back(JoinCsv(f));
  }
  return lines;
}

inline std::string HexHash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::ordered_json CellJson(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

}  // namespace detail

inline std::string ContentHash(const ResultTable& t) {
  std::uint64_t h = Fnv1a64("");
  for (const auto& l : detail::HashedLines(t)) h = Fnv1a64(l + "\n", h);
  return detail::HexHash(h);
}

inline void WriteCsv(std::ostream& os, const ResultTable& t, bool timestamp = true) {
  const auto lines = detail::HashedLines(t);
  std::uint64_t h = Fnv1a64("");
  for (const auto& l : lines) h = Fnv1a64(l + "\n", h);
  // Header lines first, then hash and timestamp, then the body.
  std::size_t i = 0;
  for (; i < lines.size() && lines[i].starts_with("# "); ++i) os << lines[i] << '\n';
  os << "# hash fnv1a64=" << detail::HexHash(h) << '\n';
  if (timestamp) os << "# timestamp " << detail::UtcTimestamp() << '\n';
  for (; i < lines.size(); ++i) os << lines[i] << '\n';
}

/// JSON lines: one header object, then one object per row.
inline void WriteJsonl(std::ostream& os, const ResultTable& t, bool timestamp = true) {
  nlohmann::ordered_json head;
  head["version"] = kVersion;
  nlohmann::ordered_json cfg;
  for (const auto& k : ConfigKeys()) cfg[k] = GetValue(t.config, k);
  head["config"] = cfg;
  nlohmann::ordered_json sum = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.summary) sum[k] = detail::CellJson(v);
  head["summary"] = sum;
  nlohmann::ordered_json units = nlohmann::ordered_json::object();
  for (const auto& c : t.columns) units[c.name] = c.unit;
  head["units"] = units;
  head["hash"] = "fnv1a64=" + ContentHash(t);
  if (timestamp) head["timestamp"] = detail::UtcTimestamp();
  os << nlohmann::ordered_json{{"header", head}}.dump() << '\n';
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < r.size(); ++i) row[t.columns[i].name] = detail::CellJson(r[i]);
    os << row.dump() << '\n';
  }
}

}  // namespace parklab::lab

#endif  // PARKLAB_LAB_TABLE_HPP_
