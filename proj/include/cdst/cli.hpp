#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cdst/combine.hpp"
#include "cdst/context.hpp"
#include "cdst/evidence.hpp"
#include "cdst/examples.hpp"
#include "cdst/format.hpp"
#include "cdst/json_io.hpp"
#include "cdst/lattice.hpp"
#include "cdst/limits.hpp"
#include "cdst/oracle.hpp"
#include "cdst/represent.hpp"

namespace cdst::cli {

struct RunConfig {
  std::string format = "text";
  bool json = false;
  bool exact = false;
  unsigned digits = 2;

  OutputFormat output() const {
    if (json || format == "json") return OutputFormat::json;
    return format == "csv" ? OutputFormat::csv : OutputFormat::text;
  }
  NumberStyle numbers() const { return {exact, digits}; }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// A context document: JSON, or Burmeister CXT when the first non-blank line is "B".
inline ContextDocument load_document(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == 'B') {
    FormalContext ctx = parse_cxt(text);
    Json raw = context_to_json(ctx);
    return {std::move(ctx), {}, {}, std::move(raw)};
  }
  return parse_json_context(text);
}

/// Context, lattice, labels and resolved masses of one input file.
struct Loaded {
  ContextDocument doc;
  std::shared_ptr<const ConceptLattice> lattice;
  std::unique_ptr<ConceptLabels> labels;
  std::vector<NamedMass> masses;

  const MassFunction& mass(const std::string& name) const {
    for (const auto& nm : masses) {
      if (nm.name == name) return nm.mass;
    }
    throw InputError("no mass named '" + name + "'");
  }
};

inline Loaded load(const std::string& path) {
  Loaded out{load_document(path), nullptr, nullptr, {}};
  out.lattice = enumerate_concepts(out.doc.context);
  out.labels = std::make_unique<ConceptLabels>(*out.lattice, out.doc.labels);
  out.masses = resolve_masses(out.doc, out.lattice, *out.labels);
  return out;
}

inline std::vector<const NamedMass*> select_masses(const Loaded& in, const std::string& name) {
  std::vector<const NamedMass*> out;
  for (const auto& nm : in.masses) {
    if (name.empty() || nm.name == name) out.push_back(&nm);
  }
  if (!name.empty() && out.empty()) throw InputError("no mass named '" + name + "'");
  if (out.empty()) throw InputError("the document defines no masses");
  return out;
}

inline void emit_table(std::ostream& out, OutputFormat format, const Table& table) {
  if (format == OutputFormat::csv) {
    write_csv(out, table);
  } else {
    write_text(out, table);
  }
}

inline std::string concept_extent(const ConceptLattice& lat, ConceptIndex c) {
  return format_set(lat[c].extent, lat.context().objects());
}

// --- lattice -----------------------------------------------------------------

inline int cmd_lattice(const RunConfig& cfg, const std::string& path, std::ostream& out) {
  const ContextDocument doc = load_document(path);
  const auto lattice = enumerate_concepts(doc.context);
  const ConceptLabels labels(*lattice, doc.labels);
  const auto& ctx = lattice->context();
  const auto covers = lattice->covers();

  switch (cfg.output()) {
    case OutputFormat::json: {
      Json j = context_to_json(ctx);
      if (doc.raw.contains("labels")) j["labels"] = doc.raw.at("labels");
      j["lattice"] = lattice_to_json(*lattice, labels);
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::csv: {
      Table t{{"label", "extent", "intent", "upper_covers"}, {}, {}};
      for (ConceptIndex c = 0; c < lattice->size(); ++c) {
        std::string uppers;
        for (const auto& [lo, hi] : covers) {
          if (lo == c) uppers += (uppers.empty() ? "" : " ") + labels[hi];
        }
        t.add_row({labels[c], concept_extent(*lattice, c), format_set((*lattice)[c].intent, ctx.attributes()), uppers});
      }
      write_csv(out, t);
      break;
    }
    case OutputFormat::text:
      for (ConceptIndex c = 0; c < lattice->size(); ++c) {
        out << labels[c] << ": (" << concept_extent(*lattice, c) << ","
            << format_set((*lattice)[c].intent, ctx.attributes()) << ")\n";
      }
      out << "covers:\n";
      for (const auto& [lo, hi] : covers) out << "  " << labels[lo] << " < " << labels[hi] << '\n';
      break;
  }
  return 0;
}

// --- bel / pl -----------------------------------------------------------------

inline int cmd_belief(const RunConfig& cfg, const std::string& path, const std::string& mass_name, bool plausibility,
                      std::ostream& out) {
  const Loaded in = load(path);
  const auto num = cfg.numbers();
  const std::string fn = plausibility ? "pl" : "bel";
  Json j = Json::array();
  bool first = true;
  for (const NamedMass* nm : select_masses(in, mass_name)) {
    Table t{{"concept", "extent", "m", fn}, {false, false, true, true}, {}};
    for (ConceptIndex c : in.lattice->ascending_order()) {
      const Rational v = plausibility ? pl(nm->mass, c) : bel(nm->mass, c);
      t.add_row({(*in.labels)[c], concept_extent(*in.lattice, c), num(nm->mass[c]), num(v)});
    }
    if (cfg.output() == OutputFormat::json) {
      j.push_back({{"mass", nm->name}, {"rows", t.to_json()}});
      continue;
    }
    if (cfg.output() == OutputFormat::text) {
      if (!first) out << '\n';
      out << "mass " << nm->name << '\n';
    }
    emit_table(out, cfg.output(), t);
    first = false;
  }
  if (cfg.output() == OutputFormat::json) out << Json{{"function", fn}, {"tables", j}}.dump(2) << '\n';
  return 0;
}

// --- combine -------------------------------------------------------------------

inline std::vector<std::string> split_order(const std::string& order) {
  std::vector<std::string> out;
  std::stringstream ss(order);
  for (std::string part; std::getline(ss, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

inline int cmd_combine(const RunConfig& cfg, const std::string& path, const std::string& order_flag,
                       std::ostream& out) {
  const Loaded in = load(path);
  std::vector<std::string> order = split_order(order_flag);
  if (order.empty()) {
    for (const auto& nm : in.masses) order.push_back(nm.name);
  }
  if (order.size() < 2) throw InputError("combine needs at least two masses");

  MassFunction acc = in.mass(order[0]);
  std::vector<Rational> conflicts;
  for (std::size_t step = 1; step < order.size(); ++step) {
    try {
      auto report = combine(acc, in.mass(order[step]));
      acc = report.result;
      conflicts.push_back(report.conflict);
    } catch (const TotalConflictError&) {
      throw TotalConflictError("total conflict when adding '" + order[step] + "' (combination step " +
                                   std::to_string(step) + ")",
                               step);
    }
  }
  std::string name;
  for (const auto& n : order) name += (name.empty() ? "" : "+") + n;

  const auto num = cfg.numbers();
  Table t{{"concept", "extent", "m", "bel", "pl"}, {false, false, true, true, true}, {}};
  for (ConceptIndex c : in.lattice->ascending_order()) {
    t.add_row({(*in.labels)[c], concept_extent(*in.lattice, c), num(acc[c]), num(bel(acc, c)), num(pl(acc, c))});
  }

  if (cfg.output() == OutputFormat::json) {
    // Re-readable as a context document: the combined mass is kept exact.
    Json j = context_to_json(in.doc.context);
    if (in.doc.raw.contains("labels")) j["labels"] = in.doc.raw.at("labels");
    Json mass = Json::object();
    for (ConceptIndex c : acc.support()) mass[(*in.labels)[c]] = to_exact(acc[c]);
    j["masses"] = Json{{name, mass}};
    Json steps = Json::array();
    for (std::size_t i = 0; i < conflicts.size(); ++i) steps.push_back({{"added", order[i + 1]}, {"conflict", num(conflicts[i])}});
    j["steps"] = steps;
    j["table"] = t.to_json();
    out << j.dump(2) << '\n';
    return 0;
  }
  if (cfg.output() == OutputFormat::text) {
    out << "combined " << name << '\n';
    for (std::size_t i = 0; i < conflicts.size(); ++i) {
      out << "conflict adding " << order[i + 1] << ": " << num(conflicts[i]) << '\n';
    }
    out << '\n';
  }
  emit_table(out, cfg.output(), t);
  return 0;
}

// --- verify-representation ------------------------------------------------------

struct VerifyTarget {
  std::string name;
  MassFunction mass;
  std::vector<std::string> labels;  // per concept of mass.lattice()
  bool normalized = false;
};

inline Json report_json(const VerificationReport& r, const VerifyTarget& target, const NumberStyle& num) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"concept", target.labels.at(row.element)},
                    {"bel", num(row.bel)},
                    {"inner", num(row.inner)},
                    {"pl", num(row.pl)},
                    {"outer", num(row.outer)},
                    {"pass", row.pass()}});
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"ok", c.ok}});
  return {{"construction", r.construction}, {"rows", rows}, {"checks", checks}, {"pass", r.passed()}};
}

inline void report_text(std::ostream& out, const VerificationReport& r, const VerifyTarget& target,
                        const NumberStyle& num, OutputFormat format) {
  Table t{{"concept", "bel", "inner", "pl", "outer", "status"}, {false, true, true, true, true, false}, {}};
  for (const auto& row : r.rows) {
    t.add_row({target.labels.at(row.element), num(row.bel), num(row.inner), num(row.pl), num(row.outer),
               row.pass() ? "ok" : "FAIL"});
  }
  if (format == OutputFormat::text) out << "mass " << target.name << ", " << r.construction << " construction\n";
  emit_table(out, format, t);
  if (format == OutputFormat::text) {
    for (const auto& c : r.checks) out << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name << '\n';
    out << (r.passed() ? "verified" : "NOT verified") << "\n";
  }
}

inline VerifyTarget make_target(const std::string& name, const MassFunction& m, const std::vector<std::string>& labels,
                                const Limits& limits) {
  const NormalizedLattice norm = normalize_lattice(m.lattice_ptr(), limits);
  if (!norm.changed) return {name, m, labels, false};
  // The old bottom survives as an ordinary concept; a default "bottom" label
  // would now be wrong, so it is renamed after its extent.
  const auto& old = m.lattice();
  std::vector<std::string> new_labels(norm.lattice->size());
  for (ConceptIndex c = 0; c < labels.size(); ++c) {
    new_labels[norm.image[c]] =
        c == old.bottom() && labels[c] == "bottom" ? format_set(old[c].extent, old.context().objects()) : labels[c];
  }
  new_labels[norm.lattice->bottom()] = "bottom";
  return {name, transport_mass(m, norm), new_labels, true};
}

inline int cmd_verify(const RunConfig& cfg, const std::string& path, const std::string& mass_name,
                      const std::string& construction, std::size_t random_count, std::uint64_t seed,
                      std::ostream& out) {
  const Limits limits = Limits::current();
  std::vector<VerifyTarget> targets;
  const bool use_frame = construction != "algebraic";
  if (random_count > 0) {
    const std::size_t max_concepts = use_frame ? std::min<std::size_t>(10, limits.max_frame_concepts) : 10;
    for (std::size_t i = 0; i < random_count; ++i) {
      auto lattice = oracle::random_lattice(seed + i, max_concepts, use_frame);
      const auto m = oracle::random_mass(seed + i, lattice);
      const ConceptLabels labels(*lattice);
      std::vector<std::string> names;
      for (ConceptIndex c = 0; c < lattice->size(); ++c) names.push_back(labels[c]);
      targets.push_back(make_target("random#" + std::to_string(seed + i), m, names, limits));
    }
  } else {
    if (path.empty()) throw InputError("verify-representation needs an input file or --random");
    const Loaded in = load(path);
    std::vector<std::string> names;
    for (ConceptIndex c = 0; c < in.lattice->size(); ++c) names.push_back((*in.labels)[c]);
    for (const NamedMass* nm : select_masses(in, mass_name)) {
      targets.push_back(make_target(nm->name, nm->mass, names, limits));
    }
  }

  std::vector<Construction> constructions;
  if (construction != "frame") constructions.push_back(Construction::algebraic);
  if (construction != "algebraic") constructions.push_back(Construction::frame);

  const auto num = cfg.numbers();
  const auto format = cfg.output();
  bool all_passed = true;
  Json j = Json::array();
  bool first = true;
  for (const auto& target : targets) {
    if (target.normalized && format == OutputFormat::text) {
      if (!first) out << '\n';
      out << "note: mass " << target.name
          << ": bottom concept has a nonempty extent; added an attribute no object has\n";
    }
    for (Construction k : constructions) {
      const VerificationReport r = verify_representation(target.mass, k, limits);
      all_passed = all_passed && r.passed();
      if (format == OutputFormat::json) {
        Json entry = report_json(r, target, num);
        entry["mass"] = target.name;
        entry["normalized"] = target.normalized;
        j.push_back(entry);
        continue;
      }
      if (format == OutputFormat::text && !first && !target.normalized) out << '\n';
      report_text(out, r, target, num, format);
      first = false;
    }
  }
  if (format == OutputFormat::json) out << Json{{"reports", j}, {"pass", all_passed}}.dump(2) << '\n';
  if (!all_passed) throw DomainError("representation verification failed");
  return 0;
}

// --- check -----------------------------------------------------------------------

inline int cmd_check(const RunConfig& cfg, const std::string& path, std::size_t n_max, const std::string& form,
                     std::ostream& out) {
  const SetTable table = parse_set_table(read_file(path));
  const bool belief = table.kind == "belief";
  const auto report =
      belief ? oracle::check_belief_axioms_set(table.carrier.size(), table.values, n_max)
             : oracle::check_plausibility_axioms_set(table.carrier.size(), table.values, n_max,
                                                     form == "union-left" ? oracle::PlausibilityForm::union_on_left
                                                                          : oracle::PlausibilityForm::dual);
  const auto num = cfg.numbers();
  Json violation = nullptr;
  if (report.first_violation) {
    Json sets = Json::array();
    for (Subset s : report.first_violation->sets) sets.push_back(names_json(IndexSet::from_mask(s), table.carrier));
    violation = {{"sets", sets}, {"lhs", num(report.first_violation->lhs)}, {"rhs", num(report.first_violation->rhs)}};
  }
  if (cfg.output() == OutputFormat::json) {
    out << Json{{"kind", table.kind},
                {"n_max", n_max},
                {"normalized", report.normalized},
                {"checked_tuples", report.checked_tuples},
                {"violation", violation},
                {"pass", report.passed()}}
               .dump(2)
        << '\n';
  } else {
    out << "kind: " << table.kind << (belief ? "" : " (" + form + " form)") << '\n';
    out << "n_max: " << n_max << '\n';
    out << "tuples checked: " << report.checked_tuples << '\n';
    out << "value on the whole carrier is 1: " << (report.normalized ? "yes" : "no") << '\n';
    if (report.first_violation) {
      out << "violation:";
      for (Subset s : report.first_violation->sets) out << ' ' << format_set(IndexSet::from_mask(s), table.carrier);
      out << "\n  lhs " << num(report.first_violation->lhs) << ", rhs " << num(report.first_violation->rhs) << '\n';
    }
    out << (report.passed() ? "pass" : "FAIL") << '\n';
  }
  if (!report.passed()) throw DomainError("axiom check failed");
  return 0;
}

// --- examples ----------------------------------------------------------------------

inline int cmd_examples(const RunConfig& cfg, const std::string& which, std::ostream& out) {
  std::vector<std::string> ids;
  if (which == "all") {
    ids = example_ids();
  } else {
    example_document(which);
    ids.push_back(which);
  }
  const auto num = cfg.numbers();
  const auto format = cfg.output();
  Json cases = Json::array();
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const ExampleCase ex = run_example(ids[k]);
    std::vector<std::string> notes;
    Json tables = Json::array();
    if (format == OutputFormat::text) {
      if (k > 0) out << '\n';
      out << "== " << ex.id << ": " << ex.title << '\n';
      for (const auto& step : ex.steps) out << "conflict adding " << step.added << ": " << num(step.conflict) << '\n';
    }
    for (const auto& rows : ex.tables) {
      Table t{{""}, {false}, {}};
      for (const auto& col : ex.columns) {
        t.header.push_back(col);
        t.numeric.push_back(true);
      }
      Json jrows = Json::array();
      for (const auto& row : rows) {
        std::vector<std::string> cells{row.label};
        Json jcells = Json::array();
        for (const auto& cell : row.cells) {
          std::string text = num(cell.computed);
          if (cell.differs) {
            text += "*";
            notes.push_back(row.label + " at " + cell.column + ": computed " + to_fixed(cell.computed, 2) + " (" +
                            to_exact(cell.computed) + "), printed " + to_fixed(cell.printed, 2));
          }
          cells.push_back(text);
          jcells.push_back({{"column", cell.column},
                            {"value", num(cell.computed)},
                            {"exact", to_exact(cell.computed)},
                            {"printed", to_fixed(cell.printed, 2)},
                            {"differs", cell.differs}});
        }
        t.add_row(std::move(cells));
        jrows.push_back({{"row", row.label}, {"cells", jcells}});
      }
      tables.push_back(jrows);
      if (format == OutputFormat::text) out << '\n';
      if (format != OutputFormat::json) emit_table(out, format, t);
    }
    if (format == OutputFormat::text && !notes.empty()) {
      out << '\n';
      for (const auto& n : notes) out << "* " << n << '\n';
    }
    Json steps = Json::array();
    for (const auto& step : ex.steps) steps.push_back({{"added", step.added}, {"conflict", num(step.conflict)}});
    cases.push_back({{"case", ex.id}, {"title", ex.title}, {"steps", steps}, {"tables", tables}, {"annotations", notes}});
  }
  if (format == OutputFormat::json) out << Json{{"cases", cases}}.dump(2) << '\n';
  return 0;
}

// --- dispatch ------------------------------------------------------------------------

inline void add_output_flags(CLI::App* cmd, RunConfig& cfg, bool numbers) {
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_flag("--json", cfg.json, "Same as --format json");
  if (numbers) {
    cmd->add_flag("--exact", cfg.exact, "Print exact rationals as p/q");
    cmd->add_option("--round", cfg.digits, "Decimal places when not exact")->check(CLI::Range(0u, 9u));
  }
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dempster-Shafer evidence on formal concept lattices", "cdst"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string input, mass_name, order, construction = "algebraic", form = "dual", which = "all";
  std::size_t n_max = 3, random_count = 0;
  std::uint64_t seed = 1;

  auto* lattice = app.add_subcommand("lattice", "Enumerate the concept lattice of a context (JSON or CXT)");
  lattice->add_option("input", input, "Context file")->required();
  add_output_flags(lattice, cfg, false);

  auto* bel_cmd = app.add_subcommand("bel", "Belief of every concept");
  auto* pl_cmd = app.add_subcommand("pl", "Plausibility of every concept");
  for (auto* cmd : {bel_cmd, pl_cmd}) {
    cmd->add_option("input", input, "Context + masses JSON")->required();
    cmd->add_option("--mass", mass_name, "Only this mass");
    add_output_flags(cmd, cfg, true);
  }

  auto* combine_cmd = app.add_subcommand("combine", "Combine masses with Dempster's rule");
  combine_cmd->add_option("input", input, "Context + masses JSON")->required();
  combine_cmd->add_option("--order", order, "Comma-separated mass names, folded left to right");
  add_output_flags(combine_cmd, cfg, true);

  auto* verify_cmd = app.add_subcommand("verify-representation", "Check bel and pl against inner and outer measures");
  verify_cmd->add_option("input", input, "Context + masses JSON");
  verify_cmd->add_option("--mass", mass_name, "Only this mass");
  verify_cmd->add_option("--construction", construction, "algebraic, frame or both")
      ->check(CLI::IsMember({"algebraic", "frame", "both"}));
  verify_cmd->add_option("--random", random_count, "Verify this many seeded random (context, mass) pairs instead");
  verify_cmd->add_option("--seed", seed, "First seed for --random");
  add_output_flags(verify_cmd, cfg, true);

  auto* check_cmd = app.add_subcommand("check", "Check the belief or plausibility inequalities on a set table");
  check_cmd->add_option("input", input, "Set table JSON")->required();
  check_cmd->add_option("--n-max", n_max, "Largest tuple size")->check(CLI::Range(1, 8));
  check_cmd->add_option("--form", form, "Plausibility inequality: dual or union-left")
      ->check(CLI::IsMember({"dual", "union-left"}));
  add_output_flags(check_cmd, cfg, true);

  auto* examples_cmd = app.add_subcommand("examples", "Recompute the worked examples");
  examples_cmd->add_option("--case", which, "movies-1, movies-2, movies-3, music or all");
  add_output_flags(examples_cmd, cfg, true);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (lattice->parsed()) return cmd_lattice(cfg, input, out);
    if (bel_cmd->parsed()) return cmd_belief(cfg, input, mass_name, false, out);
    if (pl_cmd->parsed()) return cmd_belief(cfg, input, mass_name, true, out);
    if (combine_cmd->parsed()) return cmd_combine(cfg, input, order, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, input, mass_name, construction, random_count, seed, out);
    if (check_cmd->parsed()) return cmd_check(cfg, input, n_max, form, out);
    if (examples_cmd->parsed()) return cmd_examples(cfg, which, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cdst::cli
