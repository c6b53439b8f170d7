#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cdst/context.hpp"
#include "cdst/evidence.hpp"
#include "cdst/lattice.hpp"
#include "cdst/limits.hpp"
#include "cdst/probspace.hpp"

namespace cdst {

// ---------------------------------------------------------------------------
// Forcing an empty bottom extent.

/// A lattice re-enumerated after normalize_no_universal_object, with the
/// extent-preserving injection of the old concepts into the new ones.
struct NormalizedLattice {
  std::shared_ptr<const ConceptLattice> lattice;
  std::vector<ConceptIndex> image;  // old concept index -> new concept index
  bool changed = false;
};

inline NormalizedLattice normalize_lattice(const std::shared_ptr<const ConceptLattice>& lattice,
                                           const Limits& limits = Limits::current()) {
  NormalizedLattice out;
  if (lattice->bottom_extent_empty()) {
    out.lattice = lattice;
    for (ConceptIndex c = 0; c < lattice->size(); ++c) out.image.push_back(c);
    return out;
  }
  out.lattice = enumerate_concepts(normalize_no_universal_object(lattice->context()), limits);
  out.changed = true;
  for (const auto& c : lattice->concepts()) out.image.push_back(out.lattice->find_extent(c.extent).value());
  return out;
}

/// Moves each old concept's mass to the new concept with the same extent. The
/// fresh empty-extent bottom receives 0, so bel and pl are preserved on every
/// old concept.
inline MassFunction transport_mass(const MassFunction& m, const NormalizedLattice& target) {
  if (!target.changed) return m;
  std::vector<Rational> values(target.lattice->size());
  for (ConceptIndex c = 0; c < m.lattice().size(); ++c) values[target.image.at(c)] = m[c];
  return MassFunction(target.lattice, std::move(values));
}

// ---------------------------------------------------------------------------
// Verification records shared by all constructions.

struct VerificationRow {
  std::size_t element = 0;  // concept index, or subset mask for the set-level construction
  Rational bel;
  Rational inner;
  Rational pl;
  Rational outer;

  bool bel_ok() const { return bel == inner; }
  bool pl_ok() const { return pl == outer; }
  bool pass() const { return bel_ok() && pl_ok(); }
};

struct StructuralCheck {
  std::string name;
  bool ok = false;
};

struct VerificationReport {
  std::string construction;
  std::vector<VerificationRow> rows;
  std::vector<StructuralCheck> checks;

  bool passed() const {
    for (const auto& r : rows) {
      if (!r.pass()) return false;
    }
    for (const auto& c : checks) {
      if (!c.ok) return false;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Sets: S' = {(X,u) | u ∈ X}, atoms X* = {(X,u) | u ∈ X}, h(X) = {(Y,u) | u ∈ X}.

struct SetRepresentation {
  SetMassFunction mass;
  std::vector<std::pair<Subset, std::size_t>> points;  // S', in (X ascending, u ascending) order
  std::vector<Subset> block_sources;                   // block b of the space is block_sources[b]*
  ProbabilitySpace space;

  IndexSet h(Subset x) const {
    IndexSet out;
    for (std::size_t p = 0; p < points.size(); ++p) {
      if ((x >> points[p].second) & 1U) out.insert(p);
    }
    return out;
  }

  IndexSet star(Subset x) const {
    IndexSet out;
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (points[p].first == x) out.insert(p);
    }
    return out;
  }
};

inline SetRepresentation represent_set(const SetMassFunction& m, const Limits& limits = Limits::current()) {
  const std::size_t n = m.carrier_size();
  require_within(n, limits.max_represent_carrier, "carrier size");

  std::vector<std::pair<Subset, std::size_t>> points;
  std::vector<IndexSet> blocks;
  std::vector<Subset> sources;
  std::vector<Rational> measure;
  std::vector<std::string> names;
  for (Subset x = 1; x < m.subset_count(); ++x) {
    IndexSet block;
    for (std::size_t u = 0; u < n; ++u) {
      if (!((x >> u) & 1U)) continue;
      block.insert(points.size());
      points.emplace_back(x, u);
      names.push_back("(" + std::to_string(x) + "," + std::to_string(u) + ")");
    }
    blocks.push_back(block);
    sources.push_back(x);
    measure.push_back(m[x]);
  }
  ProbabilitySpace space(points.size(), std::move(blocks), std::move(measure), std::move(names));
  return SetRepresentation{m, std::move(points), std::move(sources), std::move(space)};
}

/// Checks that h is an injective Boolean homomorphism, that distinct X* are
/// disjoint, and that bel = μ_*∘h and pl = μ^*∘h on every subset.
inline VerificationReport verify_set_representation(const SetRepresentation& rep) {
  VerificationReport report;
  report.construction = "set";
  const auto& m = rep.mass;
  const Subset full = m.full();
  const IndexSet everything = rep.space.carrier();

  bool meets = true, joins = true, complements = true, injective = true, disjoint = true;
  for (Subset x = 0; x <= full; ++x) {
    const IndexSet hx = rep.h(x);
    if (!(rep.h(full & ~x) == everything - hx)) complements = false;
    for (Subset y = 0; y <= full; ++y) {
      const IndexSet hy = rep.h(y);
      if (!(rep.h(x & y) == (hx & hy))) meets = false;
      if (!(rep.h(x | y) == (hx | hy))) joins = false;
      if (x != y && hx == hy) injective = false;
      if (x != y && rep.star(x).intersects(rep.star(y))) disjoint = false;
    }
  }
  report.checks = {
      {"h preserves intersections", meets},
      {"h preserves unions", joins},
      {"h preserves complements", complements},
      {"h maps bounds to bounds", rep.h(0).empty() && rep.h(full) == everything},
      {"h is injective", injective},
      {"distinct X* are disjoint", disjoint},
  };
  for (Subset x = 0; x <= full; ++x) {
    const IndexSet hx = rep.h(x);
    report.rows.push_back({x, bel_set(m, x), rep.space.inner_measure(hx), pl_set(m, x), rep.space.outer_measure(hx)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Concepts, algebraic construction. L' is the product over a of the down-sets
// L_a = {b | b <= a}; an element is the coordinate vector (x(a))_a. The atoms
// are d* (d at coordinate d, bottom elsewhere) and h(c)(a) = c ∧ a. L' itself
// is never materialized.

using ProductElement = std::vector<ConceptIndex>;

struct ConceptRepresentation {
  std::shared_ptr<const ConceptLattice> lattice;
  MassFunction mass;
  ConceptualProbabilitySpace<ProductElement> space;  // atom d at position d

  ProductElement h(ConceptIndex c) const {
    ProductElement out(lattice->size());
    for (ConceptIndex a = 0; a < lattice->size(); ++a) out[a] = lattice->meet(c, a);
    return out;
  }

  bool product_leq(const ProductElement& x, const ProductElement& y) const {
    for (ConceptIndex a = 0; a < x.size(); ++a) {
      if (!lattice->leq(x[a], y[a])) return false;
    }
    return true;
  }

  ProductElement product_meet(const ProductElement& x, const ProductElement& y) const {
    ProductElement out(x.size());
    for (ConceptIndex a = 0; a < x.size(); ++a) out[a] = lattice->meet(x[a], y[a]);
    return out;
  }

  ProductElement product_bottom() const { return ProductElement(lattice->size(), lattice->bottom()); }

  /// Coordinatewise join of the atoms d* with d in the given set.
  ProductElement join_of_atoms(const std::vector<ConceptIndex>& atoms) const {
    ProductElement out = product_bottom();
    for (ConceptIndex d : atoms) {
      for (ConceptIndex a = 0; a < out.size(); ++a) out[a] = lattice->join(out[a], space.atoms[d][a]);
    }
    return out;
  }

  /// Atoms below x; their join is ι(x).
  std::vector<ConceptIndex> iota_atoms(const ProductElement& x) const {
    std::vector<ConceptIndex> out;
    for (ConceptIndex d = 0; d < space.atoms.size(); ++d) {
      if (product_leq(space.atoms[d], x)) out.push_back(d);
    }
    return out;
  }

  /// Atoms of γ(x): x <= ∨_U d* iff every coordinate a outside U has x(a) = ⊥,
  /// so the least such U collects the coordinates where x is not bottom.
  std::vector<ConceptIndex> gamma_atoms(const ProductElement& x) const {
    std::vector<ConceptIndex> out;
    for (ConceptIndex a = 0; a < x.size(); ++a) {
      if (!lattice->leq(x[a], lattice->bottom())) out.push_back(a);
    }
    if (!product_leq(x, join_of_atoms(out))) throw Error("internal: γ candidate does not cover its argument");
    return out;
  }

  Rational measure_of(const std::vector<ConceptIndex>& atoms) const {
    Rational total = 0;
    for (ConceptIndex d : atoms) total += space.measure[d];
    return total;
  }

  Rational inner_measure(ConceptIndex c) const { return measure_of(iota_atoms(h(c))); }
  Rational outer_measure(ConceptIndex c) const { return measure_of(gamma_atoms(h(c))); }
};

inline void require_empty_bottom_extent(const ConceptLattice& lat) {
  if (!lat.bottom_extent_empty()) {
    throw PreconditionError(
        "the bottom concept has a nonempty extent; normalize the context first "
        "(normalize_lattice + transport_mass)");
  }
}

inline ConceptRepresentation represent_concepts(const MassFunction& m) {
  const auto& lattice = m.lattice_ptr();
  require_empty_bottom_extent(*lattice);
  ConceptRepresentation rep{lattice, m, {}};
  for (ConceptIndex d = 0; d < lattice->size(); ++d) {
    ProductElement atom(lattice->size(), lattice->bottom());
    atom[d] = d;
    rep.space.atoms.push_back(std::move(atom));
    rep.space.measure.push_back(m[d]);
  }
  return rep;
}

inline VerificationReport verify(const ConceptRepresentation& rep) {
  const auto& lat = *rep.lattice;
  const std::size_t n = lat.size();
  VerificationReport report;
  report.construction = "algebraic";

  bool meet_preserving = true, order_crux = true, injective = true, atoms_disjoint = true, bottoms_agree = true;
  std::vector<ProductElement> images;
  for (ConceptIndex c = 0; c < n; ++c) images.push_back(rep.h(c));
  const ProductElement bottom = rep.product_bottom();
  for (ConceptIndex c = 0; c < n; ++c) {
    for (ConceptIndex d = 0; d < n; ++d) {
      if (!(rep.product_meet(images[c], images[d]) == images[lat.meet(c, d)])) meet_preserving = false;
      if (rep.product_leq(rep.space.atoms[d], images[c]) != lat.leq(d, c)) order_crux = false;
      if (c != d && images[c] == images[d]) injective = false;
      if (c != d && !(rep.product_meet(rep.space.atoms[c], rep.space.atoms[d]) == bottom)) atoms_disjoint = false;
      const ConceptIndex cd = lat.meet(c, d);
      if ((cd != lat.bottom()) != !lat[cd].extent.empty()) bottoms_agree = false;
    }
  }
  report.checks = {
      {"bottom extent is empty", lat.bottom_extent_empty()},
      {"h is meet-preserving on every coordinate", meet_preserving},
      {"d* <= h(c) iff d <= c", order_crux},
      {"h is injective", injective},
      {"distinct atoms meet to bottom", atoms_disjoint},
      {"d ∧ c != bottom iff extent(d ∧ c) nonempty", bottoms_agree},
      {"measure sums to 1", rep.space.total() == 1},
  };
  for (ConceptIndex c = 0; c < n; ++c) {
    report.rows.push_back({c, bel(rep.mass, c), rep.inner_measure(c), pl(rep.mass, c), rep.outer_measure(c)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Concepts, frame construction: the derived context P' = (A', X', I') with
// A' = {(c,a) | a ∈ extent(c)}, X' = {(c,x)}, and (c,a) I' (d,x) iff c != d or
// a I x. Atoms are the extents c* = {(c,a)}; h(c) has extent {(d,a) | a ∈ extent(c)}.

struct FrameRepresentation {
  std::shared_ptr<const ConceptLattice> lattice;
  MassFunction mass;
  FormalContext derived;
  std::vector<std::pair<ConceptIndex, std::size_t>> derived_objects;     // (c, a)
  std::vector<std::pair<ConceptIndex, std::size_t>> derived_attributes;  // (c, x)
  ConceptualProbabilitySpace<IndexSet> space;                            // atom extents c*, c-th at position c

  IndexSet h_extent(ConceptIndex c) const {
    const auto& extent = (*lattice)[c].extent;
    IndexSet out;
    for (std::size_t p = 0; p < derived_objects.size(); ++p) {
      if (extent.contains(derived_objects[p].second)) out.insert(p);
    }
    return out;
  }

  IndexSet union_of_atoms(std::size_t selection) const {
    IndexSet out;
    for (ConceptIndex d = 0; d < space.atoms.size(); ++d) {
      if ((selection >> d) & 1U) out |= space.atoms[d];
    }
    return out;
  }

  Rational measure_of(std::size_t selection) const {
    Rational total = 0;
    for (ConceptIndex d = 0; d < space.atoms.size(); ++d) {
      if ((selection >> d) & 1U) total += space.measure[d];
    }
    return total;
  }

  /// ι(h(c)) by scanning every element of the atom algebra: the union of all
  /// algebra elements inside the extent of h(c). Returned as an atom selection.
  std::size_t iota_selection(ConceptIndex c) const {
    const IndexSet target = h_extent(c);
    std::size_t acc = 0;
    for (std::size_t u = 0; u < (std::size_t{1} << space.atoms.size()); ++u) {
      if (union_of_atoms(u).subset_of(target)) acc |= u;
    }
    return acc;
  }

  /// γ(h(c)): intersection of all algebra elements containing the extent of h(c).
  std::size_t gamma_selection(ConceptIndex c) const {
    const IndexSet target = h_extent(c);
    std::size_t acc = (std::size_t{1} << space.atoms.size()) - 1;
    for (std::size_t u = 0; u < (std::size_t{1} << space.atoms.size()); ++u) {
      if (target.subset_of(union_of_atoms(u))) acc &= u;
    }
    return acc;
  }

  Rational inner_measure(ConceptIndex c) const { return measure_of(iota_selection(c)); }
  Rational outer_measure(ConceptIndex c) const { return measure_of(gamma_selection(c)); }
};

inline FrameRepresentation represent_concepts_frame(const MassFunction& m, const Limits& limits = Limits::current()) {
  const auto& lattice = m.lattice_ptr();
  const auto& lat = *lattice;
  const auto& ctx = lat.context();
  if (!ctx.down(ctx.all_attributes()).empty()) {
    throw PreconditionError("the frame construction needs a context where no object has every attribute");
  }
  require_within(lat.size(), limits.max_frame_concepts, "concept count for the frame construction");

  FrameRepresentation rep{lattice, m, {}, {}, {}, {}};
  std::vector<std::string> object_names, attribute_names;
  for (ConceptIndex c = 0; c < lat.size(); ++c) {
    for (std::size_t a : lat[c].extent.elements()) {
      rep.derived_objects.emplace_back(c, a);
      object_names.push_back("c" + std::to_string(c) + ":" + ctx.objects()[a]);
    }
  }
  require_within(rep.derived_objects.size(), limits.max_frame_objects, "derived object count");
  for (ConceptIndex c = 0; c < lat.size(); ++c) {
    for (std::size_t x = 0; x < ctx.attribute_count(); ++x) {
      rep.derived_attributes.emplace_back(c, x);
      attribute_names.push_back("c" + std::to_string(c) + ":" + ctx.attributes()[x]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  for (std::size_t p = 0; p < rep.derived_objects.size(); ++p) {
    const auto [c, a] = rep.derived_objects[p];
    for (std::size_t q = 0; q < rep.derived_attributes.size(); ++q) {
      const auto [d, x] = rep.derived_attributes[q];
      if (c != d || ctx.incident(a, x)) incidence.emplace_back(p, q);
    }
  }
  rep.derived = FormalContext(std::move(object_names), std::move(attribute_names), incidence);

  for (ConceptIndex c = 0; c < lat.size(); ++c) {
    IndexSet atom;
    for (std::size_t p = 0; p < rep.derived_objects.size(); ++p) {
      if (rep.derived_objects[p].first == c) atom.insert(p);
    }
    rep.space.atoms.push_back(atom);
    rep.space.measure.push_back(m[c]);
  }
  return rep;
}

inline VerificationReport verify(const FrameRepresentation& rep) {
  const auto& lat = *rep.lattice;
  const auto& ctx = lat.context();
  const auto& derived = rep.derived;
  const std::size_t n = lat.size();
  VerificationReport report;
  report.construction = "frame";

  bool atoms_closed = true, unions_closed = true, atoms_disjoint = true;
  for (ConceptIndex c = 0; c < n; ++c) {
    if (!(derived.close_objects(rep.space.atoms[c]) == rep.space.atoms[c])) atoms_closed = false;
    for (ConceptIndex d = c + 1; d < n; ++d) {
      if (rep.space.atoms[c].intersects(rep.space.atoms[d])) atoms_disjoint = false;
    }
  }
  for (std::size_t u = 0; u < (std::size_t{1} << n); ++u) {
    const IndexSet uni = rep.union_of_atoms(u);
    if (!(derived.close_objects(uni) == uni)) unions_closed = false;
  }

  bool h_closed = true, h_intent = true, injective = true, meet_preserving = true;
  for (ConceptIndex c = 0; c < n; ++c) {
    const IndexSet hc = rep.h_extent(c);
    if (!(derived.close_objects(hc) == hc)) h_closed = false;
    // Intent of h(c) is {(e,x) | x ∈ (extent(e) ∩ extent(c))↑}.
    IndexSet expected_intent;
    for (std::size_t q = 0; q < rep.derived_attributes.size(); ++q) {
      const auto [e, x] = rep.derived_attributes[q];
      if (ctx.up(lat[e].extent & lat[c].extent).contains(x)) expected_intent.insert(q);
    }
    if (!(derived.up(hc) == expected_intent)) h_intent = false;
    for (ConceptIndex d = 0; d < n; ++d) {
      const IndexSet hd = rep.h_extent(d);
      if (c != d && hc == hd) injective = false;
      if (!((hc & hd) == rep.h_extent(lat.meet(c, d)))) meet_preserving = false;
    }
  }

  report.checks = {
      {"no object has every attribute", ctx.down(ctx.all_attributes()).empty()},
      {"each atom extent is closed in the derived context", atoms_closed},
      {"atom extents are pairwise disjoint", atoms_disjoint},
      {"every union of atom extents is closed", unions_closed},
      {"h(c) is a concept of the derived context", h_closed},
      {"intent of h(c) matches the closed form", h_intent},
      {"h is injective", injective},
      {"h is meet-preserving on extents", meet_preserving},
      {"measure sums to 1", rep.space.total() == 1},
  };
  for (ConceptIndex c = 0; c < n; ++c) {
    report.rows.push_back({c, bel(rep.mass, c), rep.inner_measure(c), pl(rep.mass, c), rep.outer_measure(c)});
  }
  return report;
}

enum class Construction { algebraic, frame };

inline VerificationReport verify_representation(const MassFunction& m, Construction construction = Construction::algebraic,
                                                const Limits& limits = Limits::current()) {
  if (construction == Construction::frame) return verify(represent_concepts_frame(m, limits));
  return verify(represent_concepts(m));
}

}  // namespace cdst
