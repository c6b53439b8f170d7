#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdst/context.hpp"
#include "cdst/evidence.hpp"
#include "cdst/lattice.hpp"
#include "cdst/probspace.hpp"
#include "cdst/rational.hpp"

namespace cdst {

using Json = nlohmann::ordered_json;

/// A named mass as written in a document, before its labels are resolved
/// against a lattice.
struct MassSpec {
  std::string name;
  std::vector<std::pair<std::string, Rational>> entries;
};

struct NamedMass {
  std::string name;
  MassFunction mass;
};

/// Context + optional concept labels + optional masses.
///
///     {"objects": [...], "attributes": [...], "incidence": [["a","x"], ...],
///      "labels": {"Pop": ["a","b"], ...},
///      "masses": {"m1": {"E-Pop": "0.2", "top": "4/5"}, ...}}
///
/// Other top-level keys are kept in `raw` and otherwise ignored.
struct ContextDocument {
  FormalContext context;
  std::vector<std::pair<std::string, std::vector<std::string>>> labels;
  std::vector<MassSpec> masses;
  Json raw;
};

/// Accepts "p/q" or decimal strings, and JSON numbers via their shortest
/// round-trip spelling (so 0.9 reads as 9/10).
inline Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number()) return parse_rational(value.dump());
  throw ParseError("expected a rational as a string or number, got " + value.dump());
}

namespace detail {

inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline std::vector<std::string> string_list(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const Json& list = doc.at(key);
  if (!list.is_array()) throw ParseError(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& item : list) {
    if (!item.is_string()) throw ParseError(std::string("'") + key + "' entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline ContextDocument parse_json_context(std::string_view text) {
  Json doc = detail::parse_json_text(text);
  if (!doc.is_object()) throw ParseError("context document must be a JSON object");

  auto objects = detail::string_list(doc, "objects");
  auto attributes = detail::string_list(doc, "attributes");
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  {
    FormalContext names_only(objects, attributes, {});
    if (!doc.contains("incidence") || !doc.at("incidence").is_array()) throw ParseError("missing list 'incidence'");
    for (const auto& pair : doc.at("incidence")) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw ParseError("incidence entries must be [object, attribute] name pairs, got " + pair.dump());
      }
      const auto g = names_only.object_index(pair[0].get<std::string>());
      const auto m = names_only.attribute_index(pair[1].get<std::string>());
      if (!g) throw InputError("unknown object '" + pair[0].get<std::string>() + "' in incidence");
      if (!m) throw InputError("unknown attribute '" + pair[1].get<std::string>() + "' in incidence");
      incidence.emplace_back(*g, *m);
    }
  }
  ContextDocument out{FormalContext(std::move(objects), std::move(attributes), incidence), {}, {}, doc};

  if (doc.contains("labels")) {
    const Json& labels = doc.at("labels");
    if (!labels.is_object()) throw ParseError("'labels' must map label names to object lists");
    for (const auto& [label, extent] : labels.items()) {
      if (!extent.is_array()) throw ParseError("label '" + label + "' must map to a list of objects");
      std::vector<std::string> names;
      for (const auto& g : extent) {
        if (!g.is_string() || !out.context.object_index(g.get<std::string>())) {
          throw InputError("label '" + label + "' refers to unknown object " + g.dump());
        }
        names.push_back(g.get<std::string>());
      }
      out.labels.emplace_back(label, std::move(names));
    }
  }

  if (doc.contains("masses")) {
    const Json& masses = doc.at("masses");
    if (!masses.is_object()) throw ParseError("'masses' must map mass names to label -> value maps");
    for (const auto& [name, entries] : masses.items()) {
      if (!entries.is_object()) throw ParseError("mass '" + name + "' must map concept labels to values");
      MassSpec spec{name, {}};
      Rational total = 0;
      for (const auto& [label, value] : entries.items()) {
        Rational v = rational_from_json(value);
        if (v < 0) throw InputError("mass '" + name + "' has negative value on '" + label + "'");
        total += v;
        spec.entries.emplace_back(label, std::move(v));
      }
      if (total != 1) throw InputError("mass '" + name + "' sums to " + to_exact(total) + ", not 1");
      out.masses.push_back(std::move(spec));
    }
  }
  return out;
}

/// Display names for concepts and resolution of user labels.
///
/// A label resolves by user name (from the document's label map), by the
/// defaults `top`, `bottom` and `#i` (canonical index), or by an extent literal
/// such as `{a,b}`. A label matching more than one concept is an error.
class ConceptLabels {
 public:
  ConceptLabels(const ConceptLattice& lattice,
                const std::vector<std::pair<std::string, std::vector<std::string>>>& labels = {})
      : lattice_(&lattice), display_(lattice.size()) {
    const auto& ctx = lattice.context();
    for (const auto& [label, objects] : labels) {
      ObjectSet extent;
      for (const auto& g : objects) {
        auto index = ctx.object_index(g);
        if (!index) throw InputError("label '" + label + "' refers to unknown object '" + g + "'");
        extent.insert(*index);
      }
      auto c = lattice.find_extent(extent);
      if (!c) throw InputError("label '" + label + "' matches no concept: " + format_set(extent, ctx.objects()) +
                               " is not a closed extent");
      named_.emplace_back(label, *c);
      if (display_[*c].empty()) display_[*c] = label;
    }
    for (ConceptIndex c = 0; c < lattice.size(); ++c) {
      if (!display_[c].empty()) continue;
      if (c == lattice.top()) {
        display_[c] = "top";
      } else if (c == lattice.bottom()) {
        display_[c] = "bottom";
      } else {
        display_[c] = "#" + std::to_string(c);
      }
    }
  }

  const std::string& operator[](ConceptIndex c) const { return display_.at(c); }

  ConceptIndex resolve(std::string_view label) const {
    const auto& lat = *lattice_;
    std::set<ConceptIndex> hits;
    for (const auto& [name, c] : named_) {
      if (name == label) hits.insert(c);
    }
    if (label == "top") hits.insert(lat.top());
    if (label == "bottom") hits.insert(lat.bottom());
    if (label.size() > 1 && label.front() == '#' &&
        label.substr(1).find_first_not_of("0123456789") == std::string_view::npos) {
      const std::size_t index = std::stoul(std::string(label.substr(1)));
      if (index < lat.size()) hits.insert(index);
    }
    if (auto literal = parse_extent_literal(label)) {
      if (auto c = lat.find_extent(*literal)) {
        hits.insert(*c);
      } else {
        throw InputError("extent " + std::string(label) + " is not closed, so it names no concept");
      }
    }
    if (hits.empty()) throw InputError("label '" + std::string(label) + "' matches no concept");
    if (hits.size() > 1) throw InputError("label '" + std::string(label) + "' is ambiguous");
    return *hits.begin();
  }

 private:
  std::optional<ObjectSet> parse_extent_literal(std::string_view label) const {
    if (label.size() < 2 || label.front() != '{' || label.back() != '}') return std::nullopt;
    const auto& ctx = lattice_->context();
    ObjectSet extent;
    std::string_view body = label.substr(1, label.size() - 2);
    while (!body.empty()) {
      const auto comma = body.find(',');
      std::string name(detail::trim(body.substr(0, comma)));
      auto g = ctx.object_index(name);
      if (!g) throw InputError("unknown object '" + name + "' in extent " + std::string(label));
      extent.insert(*g);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return extent;
  }

  const ConceptLattice* lattice_;
  std::vector<std::string> display_;
  std::vector<std::pair<std::string, ConceptIndex>> named_;
};

inline MassFunction resolve_mass(const MassSpec& spec, const std::shared_ptr<const ConceptLattice>& lattice,
                                 const ConceptLabels& labels) {
  std::vector<Rational> values(lattice->size());
  std::vector<bool> assigned(lattice->size(), false);
  for (const auto& [label, value] : spec.entries) {
    ConceptIndex c = 0;
    try {
      c = labels.resolve(label);
    } catch (const InputError& e) {
      throw InputError("mass '" + spec.name + "': " + e.what());
    }
    if (assigned[c]) throw InputError("mass '" + spec.name + "' assigns concept '" + labels[c] + "' twice");
    assigned[c] = true;
    values[c] = value;
  }
  try {
    return MassFunction(lattice, std::move(values));
  } catch (const InputError& e) {
    throw InputError("mass '" + spec.name + "': " + e.what());
  }
}

inline std::vector<NamedMass> resolve_masses(const ContextDocument& doc,
                                             const std::shared_ptr<const ConceptLattice>& lattice,
                                             const ConceptLabels& labels) {
  std::vector<NamedMass> out;
  for (const auto& spec : doc.masses) out.push_back({spec.name, resolve_mass(spec, lattice, labels)});
  return out;
}

inline Json context_to_json(const FormalContext& ctx) {
  Json out;
  out["objects"] = ctx.objects();
  out["attributes"] = ctx.attributes();
  Json incidence = Json::array();
  for (const auto& [g, m] : ctx.incidence()) incidence.push_back({ctx.objects()[g], ctx.attributes()[m]});
  out["incidence"] = incidence;
  return out;
}

inline Json names_json(const IndexSet& set, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t i : set.elements()) out.push_back(names.at(i));
  return out;
}

inline Json lattice_to_json(const ConceptLattice& lat, const ConceptLabels& labels) {
  const auto& ctx = lat.context();
  Json concepts = Json::array();
  for (ConceptIndex c = 0; c < lat.size(); ++c) {
    concepts.push_back({{"label", labels[c]},
                        {"extent", names_json(lat[c].extent, ctx.objects())},
                        {"intent", names_json(lat[c].intent, ctx.attributes())}});
  }
  Json covers = Json::array();
  for (const auto& [lo, hi] : lat.covers()) covers.push_back({labels[lo], labels[hi]});
  return Json{{"concepts", concepts}, {"covers", covers}};
}

// ---------------------------------------------------------------------------
// Partition spaces: {"carrier": [...], "blocks": [[...], ...], "mu": [...]}.

inline std::string json_scalar_name(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline ProbabilitySpace partition_space_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("carrier") || !doc.contains("blocks") || !doc.contains("mu")) {
    throw ParseError("partition space needs 'carrier', 'blocks' and 'mu'");
  }
  std::vector<std::string> names;
  for (const auto& v : doc.at("carrier")) names.push_back(json_scalar_name(v));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second) throw InputError("duplicate carrier element '" + names[i] + "'");
  }
  std::vector<IndexSet> blocks;
  for (const auto& block : doc.at("blocks")) {
    IndexSet b;
    for (const auto& v : block) {
      auto it = index.find(json_scalar_name(v));
      if (it == index.end()) throw InputError("block element " + v.dump() + " is not in the carrier");
      b.insert(it->second);
    }
    blocks.push_back(b);
  }
  std::vector<Rational> mu;
  for (const auto& v : doc.at("mu")) mu.push_back(rational_from_json(v));
  const std::size_t n = names.size();
  return ProbabilitySpace(n, std::move(blocks), std::move(mu), std::move(names));
}

inline ProbabilitySpace parse_partition_space(std::string_view text) {
  return partition_space_from_json(detail::parse_json_text(text));
}

inline Json partition_space_to_json(const ProbabilitySpace& sp) {
  std::vector<std::string> names = sp.names();
  if (names.empty()) {
    for (std::size_t i = 0; i < sp.carrier_size(); ++i) names.push_back(std::to_string(i));
  }
  Json blocks = Json::array();
  for (const auto& b : sp.blocks()) blocks.push_back(names_json(b, names));
  Json mu = Json::array();
  for (const auto& v : sp.measure()) mu.push_back(to_exact(v));
  return Json{{"carrier", names}, {"blocks", blocks}, {"mu", mu}};
}

// ---------------------------------------------------------------------------
// Set-function tables for the axiom checkers:
//   {"carrier": [...], "kind": "belief" | "plausibility",
//    "table": [{"set": [...], "value": "1/2"}, ...]}
// or, instead of "table", the keys of a partition space, tabulating its inner
// (belief) or outer (plausibility) measure.

struct SetTable {
  std::vector<std::string> carrier;
  std::string kind;
  std::vector<Rational> values;  // indexed by subset mask
};

inline SetTable parse_set_table(std::string_view text) {
  Json doc = detail::parse_json_text(text);
  if (!doc.is_object() || !doc.contains("carrier")) throw ParseError("set table needs 'carrier'");
  SetTable out;
  for (const auto& v : doc.at("carrier")) out.carrier.push_back(json_scalar_name(v));
  if (out.carrier.size() > 20) throw CapacityError("set table carrier is too large");
  out.kind = doc.value("kind", std::string("belief"));
  if (out.kind != "belief" && out.kind != "plausibility") {
    throw ParseError("'kind' must be 'belief' or 'plausibility'");
  }
  const std::size_t count = std::size_t{1} << out.carrier.size();
  out.values.assign(count, Rational(0));

  if (doc.contains("blocks")) {
    const auto sp = partition_space_from_json(doc);
    for (std::uint64_t x = 0; x < count; ++x) {
      const IndexSet y = IndexSet::from_mask(x);
      out.values[x] = out.kind == "belief" ? sp.inner_measure(y) : sp.outer_measure(y);
    }
    return out;
  }

  if (!doc.contains("table") || !doc.at("table").is_array()) throw ParseError("set table needs 'table' or 'blocks'");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < out.carrier.size(); ++i) index.emplace(out.carrier[i], i);
  std::vector<bool> seen(count, false);
  for (const auto& row : doc.at("table")) {
    if (!row.is_object() || !row.contains("set") || !row.contains("value")) {
      throw ParseError("table rows need 'set' and 'value'");
    }
    std::uint64_t mask = 0;
    for (const auto& v : row.at("set")) {
      auto it = index.find(json_scalar_name(v));
      if (it == index.end()) throw InputError("table set element " + v.dump() + " is not in the carrier");
      mask |= std::uint64_t{1} << it->second;
    }
    if (seen[mask]) throw InputError("table lists a subset twice");
    seen[mask] = true;
    out.values[mask] = rational_from_json(row.at("value"));
  }
  for (std::uint64_t x = 0; x < count; ++x) {
    if (!seen[x]) throw InputError("table is missing subset " + format_set(IndexSet::from_mask(x), out.carrier));
  }
  return out;
}

}  // namespace cdst
