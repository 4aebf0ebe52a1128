#ifndef SAUQ_REPORT_HPP
#define SAUQ_REPORT_HPP

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sauq/error.hpp"

namespace sauq {

/// Shortest decimal string that parses back to the same double.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// A cell is text, a number, or empty (unavailable value).
struct Cell {
  enum class Kind { Empty, Text, Number };
  Kind kind = Kind::Empty;
  std::string text;
  double number = 0.0;

  Cell() = default;
  Cell(std::string s) : kind(Kind::Text), text(std::move(s)) {}
  Cell(const char* s) : kind(Kind::Text), text(s) {}
  Cell(std::string_view s) : kind(Kind::Text), text(s) {}
  Cell(double v) : kind(Kind::Number), number(v) {}
  Cell(std::size_t v) : kind(Kind::Number), number(static_cast<double>(v)) {}
  Cell(std::optional<double> v) {
    if (v) {
      kind = Kind::Number;
      number = *v;
    }
  }
};

/// Column-oriented table written as CSV or as a JSON array of records.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != header.size()) throw ArgumentError("table row width differs from header");
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string csv_field(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Empty: return "";
    case Cell::Kind::Number: return format_number(c.number);
    case Cell::Kind::Text: break;
  }
  if (c.text.find_first_of(",\"\n") == std::string::npos) return c.text;
  std::string out = "\"";
  for (char ch : c.text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline nlohmann::json json_cell(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Empty: return nullptr;
    case Cell::Kind::Number:
      if (!std::isfinite(c.number)) return format_number(c.number);
      return c.number;
    case Cell::Kind::Text: return c.text;
  }
  return nullptr;
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out += ',';
    out += detail::csv_field(Cell(t.header[i]));
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline nlohmann::json to_json(const Table& t) {
  auto arr = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[t.header[i]] = detail::json_cell(row[i]);
    arr.push_back(std::move(rec));
  }
  return arr;
}

inline void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw Error("write failed for '" + path.string() + "'");
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace sauq

#endif  // SAUQ_REPORT_HPP
