#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "cdst/error.hpp"
#include "cdst/json_io.hpp"
#include "cdst/rational.hpp"

namespace cdst {

enum class OutputFormat { text, csv, json };

/// How rationals are printed: exact p/q, or fixed-point after half-away rounding.
struct NumberStyle {
  bool exact = false;
  unsigned digits = 2;

  std::string operator()(const Rational& v) const { return exact ? to_exact(v) : to_fixed(v, digits); }
};

/// A rectangular table of strings. Columns flagged numeric are right-aligned
/// in text output.
struct Table {
  std::vector<std::string> header;
  std::vector<bool> numeric;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw Error("table row width does not match its header");
    rows.push_back(std::move(row));
  }

  Json to_json() const {
    Json out = Json::array();
    for (const auto& row : rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      out.push_back(obj);
    }
    return out;
  }
};

inline void write_text(std::ostream& out, const Table& table) {
  std::vector<std::size_t> width(table.header.size());
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = table.header[i].size();
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      const std::string pad(width[i] - row[i].size(), ' ');
      const bool right = i < table.numeric.size() && table.numeric[i];
      line += right ? pad + row[i] : row[i] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
}

inline std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

inline void write_csv(std::ostream& out, const Table& table) {
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
}

}  // namespace cdst
