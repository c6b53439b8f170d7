#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cdst/combine.hpp"
#include "cdst/fixtures.hpp"
#include "cdst/json_io.hpp"
#include "cdst/lattice.hpp"

namespace cdst {

struct ExampleCell {
  std::string column;
  Rational computed;
  Rational printed;
  // computed, rounded half-away to 2 places, is not the printed value
  bool differs = false;
};

struct ExampleRow {
  std::string kind;  // mass, bel or pl
  std::string of;    // a mass name, or "combined"
  std::string label;
  std::vector<ExampleCell> cells;
};

struct CombinationStep {
  std::string added;
  Rational conflict;
};

/// One worked example, recomputed from its fixture document.
struct ExampleCase {
  std::string id;
  std::string title;
  std::shared_ptr<const ConceptLattice> lattice;
  std::vector<std::string> columns;
  std::vector<std::vector<ExampleRow>> tables;
  std::vector<NamedMass> masses;
  std::vector<std::string> order;
  std::vector<CombinationStep> steps;
  MassFunction combined;

  const ExampleRow& row(std::string_view kind, std::string_view of) const {
    for (const auto& table : tables) {
      for (const auto& r : table) {
        if (r.kind == kind && r.of == of) return r;
      }
    }
    throw InputError("example " + id + " has no " + std::string(kind) + " row for " + std::string(of));
  }

  const ExampleCell& cell(std::string_view kind, std::string_view of, std::string_view column) const {
    for (const auto& c : row(kind, of).cells) {
      if (c.column == column) return c;
    }
    throw InputError("example " + id + " has no column " + std::string(column));
  }
};

inline std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const auto& f : fixtures::all) ids.emplace_back(f.id);
  return ids;
}

inline std::string_view example_document(std::string_view id) {
  for (const auto& f : fixtures::all) {
    if (f.id == id) return f.text;
  }
  throw InputError("unknown example case '" + std::string(id) + "'");
}

inline ExampleCase run_example(std::string_view id) {
  const ContextDocument doc = parse_json_context(example_document(id));
  const Json& printed = doc.raw.at("printed");
  auto lattice = enumerate_concepts(doc.context);
  const ConceptLabels labels(*lattice, doc.labels);
  auto masses = resolve_masses(doc, lattice, labels);

  auto mass_named = [&](const std::string& name) -> const MassFunction& {
    for (const auto& nm : masses) {
      if (nm.name == name) return nm.mass;
    }
    throw InputError("example " + std::string(id) + " has no mass '" + name + "'");
  };

  std::vector<std::string> order = printed.at("combine").get<std::vector<std::string>>();
  std::vector<CombinationStep> steps;
  MassFunction combined = mass_named(order.at(0));
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto report = combine(combined, mass_named(order[i]));
    combined = report.result;
    steps.push_back({order[i], report.conflict});
  }
  std::string combined_label;
  for (const auto& name : order) combined_label += (combined_label.empty() ? "" : "+") + name;

  ExampleCase out{std::string(id),
                  printed.at("title").get<std::string>(),
                  lattice,
                  printed.at("columns").get<std::vector<std::string>>(),
                  {},
                  masses,
                  order,
                  steps,
                  combined};

  std::vector<ConceptIndex> column_concepts;
  for (const auto& col : out.columns) column_concepts.push_back(labels.resolve(col));

  for (const auto& table : printed.at("tables")) {
    std::vector<ExampleRow> rows;
    for (const auto& r : table.at("rows")) {
      ExampleRow row{r.at("kind").get<std::string>(), r.at("of").get<std::string>(), {}, {}};
      const MassFunction& m = row.of == "combined" ? combined : mass_named(row.of);
      const std::string subject = row.of == "combined" ? combined_label : row.of;
      row.label = row.kind == "mass" ? subject : row.kind + " " + subject;
      const auto& values = r.at("values");
      if (values.size() != out.columns.size()) throw InputError("printed row width does not match its columns");
      for (std::size_t i = 0; i < out.columns.size(); ++i) {
        const ConceptIndex c = column_concepts[i];
        Rational v;
        if (row.kind == "mass") {
          v = m[c];
        } else if (row.kind == "bel") {
          v = bel(m, c);
        } else if (row.kind == "pl") {
          v = pl(m, c);
        } else {
          throw InputError("unknown printed row kind '" + row.kind + "'");
        }
        const Rational p = rational_from_json(values[i]);
        row.cells.push_back({out.columns[i], v, p, round_half_away(v, 2) != p});
      }
      rows.push_back(std::move(row));
    }
    out.tables.push_back(std::move(rows));
  }
  return out;
}

}  // namespace cdst
