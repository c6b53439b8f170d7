#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdst/error.hpp"
#include "cdst/index_set.hpp"

namespace cdst {

using ObjectSet = IndexSet;
using AttributeSet = IndexSet;

/// A formal context (objects, attributes, incidence). Name order defines index
/// order. Immutable once built.
class FormalContext {
 public:
  FormalContext() = default;

  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                const std::vector<std::pair<std::size_t, std::size_t>>& incidence)
      : objects_(std::move(objects)), attributes_(std::move(attributes)) {
    IndexSet::check_index_bound(objects_.size());
    IndexSet::check_index_bound(attributes_.size());
    require_distinct(objects_, "object");
    require_distinct(attributes_, "attribute");
    rows_.resize(objects_.size());
    columns_.resize(attributes_.size());
    for (const auto& [g, m] : incidence) {
      if (g >= objects_.size() || m >= attributes_.size()) {
        throw InputError("incidence pair (" + std::to_string(g) + "," + std::to_string(m) + ") out of range");
      }
      rows_[g].insert(m);
      columns_[m].insert(g);
    }
  }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }

  bool incident(std::size_t object, std::size_t attribute) const { return rows_.at(object).contains(attribute); }

  // Attributes of one object / objects having one attribute.
  const AttributeSet& object_intent(std::size_t object) const { return rows_.at(object); }
  const ObjectSet& attribute_extent(std::size_t attribute) const { return columns_.at(attribute); }

  ObjectSet all_objects() const { return IndexSet::full(objects_.size()); }
  AttributeSet all_attributes() const { return IndexSet::full(attributes_.size()); }

  std::vector<std::pair<std::size_t, std::size_t>> incidence() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t g = 0; g < rows_.size(); ++g) {
      for (std::size_t m : rows_[g].elements()) out.emplace_back(g, m);
    }
    return out;
  }

  std::optional<std::size_t> object_index(std::string_view name) const { return find(objects_, name); }
  std::optional<std::size_t> attribute_index(std::string_view name) const { return find(attributes_, name); }

  /// B↑: attributes shared by every object of B. up(∅) is every attribute.
  AttributeSet up(const ObjectSet& objects) const {
    AttributeSet result = all_attributes();
    for (std::size_t g : objects.elements()) result &= rows_.at(g);
    return result;
  }

  /// Y↓: objects having every attribute of Y. down(∅) is every object.
  ObjectSet down(const AttributeSet& attributes) const {
    ObjectSet result = all_objects();
    for (std::size_t m : attributes.elements()) result &= columns_.at(m);
    return result;
  }

  ObjectSet close_objects(const ObjectSet& objects) const { return down(up(objects)); }
  AttributeSet close_attributes(const AttributeSet& attributes) const { return up(down(attributes)); }

  friend bool operator==(const FormalContext& a, const FormalContext& b) {
    return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
  }

 private:
  static void require_distinct(const std::vector<std::string>& names, const char* kind) {
    std::set<std::string_view> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) throw InputError(std::string("duplicate ") + kind + " name '" + n + "'");
    }
  }

  static std::optional<std::size_t> find(const std::vector<std::string>& names, std::string_view name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    return std::nullopt;
  }

  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> columns_;
};

/// Guarantees X↓ = ∅: if some object holds every attribute, appends a fresh
/// attribute (`__none__`, suffixed with a counter if taken) held by no object.
inline FormalContext normalize_no_universal_object(const FormalContext& ctx) {
  if (ctx.down(ctx.all_attributes()).empty()) return ctx;
  std::string fresh = "__none__";
  for (std::size_t counter = 1; ctx.attribute_index(fresh); ++counter) {
    fresh = "__none__" + std::to_string(counter);
  }
  auto attributes = ctx.attributes();
  attributes.push_back(std::move(fresh));
  return FormalContext(ctx.objects(), std::move(attributes), ctx.incidence());
}

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  // A final newline terminates the last line; it does not open another.
  if (!text.empty() && text.back() == '\n') lines.pop_back();
  return lines;
}

inline std::size_t parse_count(const std::string& line, std::size_t line_no, const char* what) {
  if (line.empty() || line.size() > 9 || line.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(std::string("expected ") + what + " count, got '" + line + "'", line_no);
  }
  return std::stoul(line);
}

}  // namespace detail

/// Burmeister CXT: `B`, blank line, object count, attribute count, blank line,
/// object names, attribute names, then one row of `X`/`.` per object.
inline FormalContext parse_cxt(std::string_view text) {
  const auto lines = detail::split_lines(text);
  auto line_at = [&](std::size_t index, const char* expected) -> const std::string& {
    if (index >= lines.size()) throw ParseError(std::string("unexpected end of file, expected ") + expected, index + 1);
    return lines[index];
  };

  if (line_at(0, "'B'") != "B") throw ParseError("header must be the line 'B'", 1);
  if (!line_at(1, "blank line").empty()) throw ParseError("expected blank line after 'B'", 2);
  const std::size_t n_objects = detail::parse_count(line_at(2, "object count"), 3, "object");
  const std::size_t n_attributes = detail::parse_count(line_at(3, "attribute count"), 4, "attribute");
  if (!line_at(4, "blank line").empty()) throw ParseError("expected blank line after counts", 5);

  std::size_t index = 5;
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < n_objects; ++i, ++index) objects.push_back(line_at(index, "object name"));
  std::vector<std::string> attributes;
  for (std::size_t i = 0; i < n_attributes; ++i, ++index) attributes.push_back(line_at(index, "attribute name"));

  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  for (std::size_t g = 0; g < n_objects; ++g, ++index) {
    const std::string& row = line_at(index, "incidence row");
    if (row.size() != n_attributes) {
      throw ParseError("row has " + std::to_string(row.size()) + " columns, expected " + std::to_string(n_attributes),
                       index + 1);
    }
    for (std::size_t m = 0; m < row.size(); ++m) {
      const char ch = row[m];
      if (ch == 'X' || ch == 'x') {
        incidence.emplace_back(g, m);
      } else if (ch != '.') {
        throw ParseError(std::string("illegal character '") + ch + "' in incidence row", index + 1);
      }
    }
  }
  for (; index < lines.size(); ++index) {
    if (!lines[index].empty()) throw ParseError("trailing content after incidence rows", index + 1);
  }

  try {
    return FormalContext(std::move(objects), std::move(attributes), incidence);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

inline std::string to_cxt(const FormalContext& ctx) {
  std::ostringstream out;
  out << "B\n\n" << ctx.object_count() << '\n' << ctx.attribute_count() << "\n\n";
  for (const auto& g : ctx.objects()) out << g << '\n';
  for (const auto& m : ctx.attributes()) out << m << '\n';
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    for (std::size_t m = 0; m < ctx.attribute_count(); ++m) out << (ctx.incident(g, m) ? 'X' : '.');
    out << '\n';
  }
  return out.str();
}

}  // namespace cdst
