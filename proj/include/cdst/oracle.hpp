#pragma once

// Brute-force ground truth for differential tests. Nothing here calls the
// algorithms it is meant to check: derivations are recomputed from the raw
// incidence, orders from raw extents, measures from full algebra scans.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cdst/context.hpp"
#include "cdst/evidence.hpp"
#include "cdst/lattice.hpp"
#include "cdst/limits.hpp"
#include "cdst/probspace.hpp"
#include "cdst/rational.hpp"
#include "cdst/represent.hpp"

namespace cdst::oracle {

// ---------------------------------------------------------------------------
// Axiom checkers over tables indexed by subset mask.

struct AxiomViolation {
  std::vector<Subset> sets;
  Rational lhs;
  Rational rhs;
};

struct AxiomReport {
  std::uint64_t checked_tuples = 0;
  bool normalized = true;  // f(S) = 1
  std::optional<AxiomViolation> first_violation;

  bool passed() const { return normalized && !first_violation; }
};

enum class PlausibilityForm {
  // pl(A1 ∩ ... ∩ An) <= Σ_I (-1)^{|I|+1} pl(∪_{i∈I} Ai): the dual of the
  // belief inequality under pl(X) = 1 - bel(S∖X).
  dual,
  // pl(A1 ∪ ... ∪ An) <= Σ_I (-1)^{|I|+1} pl(∩_{i∈I} Ai): holds for n <= 2 but
  // not in general (a single block of three points breaks it at n = 3).
  union_on_left,
};

namespace detail {

enum class Inequality { belief, plausibility_dual, plausibility_union_left };

// Visits each multiset of n subsets once (nondecreasing tuples). Both sides of
// every inequality are symmetric in the Ai, so this covers all n-tuples.
inline void check_tuples(std::size_t carrier, const std::vector<Rational>& f, std::size_t n, Inequality kind,
                         AxiomReport& report) {
  const Subset count = static_cast<Subset>(std::size_t{1} << carrier);
  std::vector<Subset> tuple(n, 0);
  std::function<void(std::size_t, Subset)> recurse = [&](std::size_t depth, Subset start) {
    if (report.first_violation) return;
    if (depth == n) {
      ++report.checked_tuples;
      Subset all_union = 0;
      Subset all_meet = count - 1;
      for (Subset a : tuple) {
        all_union |= a;
        all_meet &= a;
      }
      Rational rhs = 0;
      for (std::size_t pick = 1; pick < (std::size_t{1} << n); ++pick) {
        Subset meet = count - 1;
        Subset join = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if ((pick >> i) & 1U) {
            meet &= tuple[i];
            join |= tuple[i];
          }
        }
        const Rational& term = kind == Inequality::plausibility_dual ? f[join] : f[meet];
        if (__builtin_popcountll(pick) % 2 == 1) {
          rhs += term;
        } else {
          rhs -= term;
        }
      }
      bool ok = true;
      Rational lhs;
      switch (kind) {
        case Inequality::belief:
          lhs = f[all_union];
          ok = lhs >= rhs;
          break;
        case Inequality::plausibility_dual:
          lhs = f[all_meet];
          ok = lhs <= rhs;
          break;
        case Inequality::plausibility_union_left:
          lhs = f[all_union];
          ok = lhs <= rhs;
          break;
      }
      if (!ok) report.first_violation = AxiomViolation{tuple, lhs, rhs};
      return;
    }
    for (Subset a = start; a < count; ++a) {
      tuple[depth] = a;
      recurse(depth + 1, a);
      if (report.first_violation) return;
    }
  };
  recurse(0, 0);
}

inline AxiomReport check(std::size_t carrier, const std::vector<Rational>& f, std::size_t n_max, Inequality kind,
                         const Limits& limits) {
  require_within(carrier, limits.max_axiom_carrier, "carrier size for the axiom check");
  require_within(n_max, limits.max_axiom_arity, "tuple length for the axiom check");
  if (f.size() != (std::size_t{1} << carrier)) throw InputError("table needs one value per subset");
  AxiomReport report;
  report.normalized = f.back() == 1;
  for (std::size_t n = 1; n <= n_max && !report.first_violation; ++n) check_tuples(carrier, f, n, kind, report);
  return report;
}

}  // namespace detail

/// f(S) = 1 and f(A1 ∪ ... ∪ An) >= Σ_I (-1)^{|I|+1} f(∩_{i∈I} Ai) for every
/// tuple with 1 <= n <= n_max.
inline AxiomReport check_belief_axioms_set(std::size_t carrier, const std::vector<Rational>& f, std::size_t n_max,
                                           const Limits& limits = Limits::current()) {
  return detail::check(carrier, f, n_max, detail::Inequality::belief, limits);
}

inline AxiomReport check_plausibility_axioms_set(std::size_t carrier, const std::vector<Rational>& f, std::size_t n_max,
                                                 PlausibilityForm form = PlausibilityForm::dual,
                                                 const Limits& limits = Limits::current()) {
  return detail::check(carrier, f, n_max,
                       form == PlausibilityForm::dual ? detail::Inequality::plausibility_dual
                                                      : detail::Inequality::plausibility_union_left,
                       limits);
}

// ---------------------------------------------------------------------------
// Lattice-level brute force.

namespace detail {

inline bool extent_within(const FormalContext& ctx, const ObjectSet& a, const ObjectSet& b) {
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    if (a.contains(g) && !b.contains(g)) return false;
  }
  return true;
}

inline bool extents_meet(const FormalContext& ctx, const ObjectSet& a, const ObjectSet& b) {
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    if (a.contains(g) && b.contains(g)) return true;
  }
  return false;
}

}  // namespace detail

enum class ScanOrder { forward, backward };

inline std::vector<ConceptIndex> scan(std::size_t n, ScanOrder order) {
  std::vector<ConceptIndex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = order == ScanOrder::forward ? i : n - 1 - i;
  return out;
}

/// Σ m(d) over d with extent(d) ⊆ extent(c), by a full scan.
inline Rational brute_bel(const MassFunction& m, ConceptIndex c, ScanOrder order = ScanOrder::forward) {
  const auto& lat = m.lattice();
  Rational total = 0;
  for (ConceptIndex d : scan(lat.size(), order)) {
    if (detail::extent_within(lat.context(), lat[d].extent, lat[c].extent)) total += m[d];
  }
  return total;
}

/// Σ m(d) over d whose extent meets extent(c) (the meet's extent is the intersection).
inline Rational brute_pl(const MassFunction& m, ConceptIndex c, ScanOrder order = ScanOrder::forward) {
  const auto& lat = m.lattice();
  Rational total = 0;
  for (ConceptIndex d : scan(lat.size(), order)) {
    if (detail::extents_meet(lat.context(), lat[d].extent, lat[c].extent)) total += m[d];
  }
  return total;
}

/// Closes every object subset with derivations computed from raw incidence.
inline std::vector<Concept> brute_concepts(const FormalContext& ctx) {
  if (ctx.object_count() > 20) throw CapacityError("brute_concepts is exponential in the object count");
  const std::size_t n = ctx.object_count();
  const std::size_t m = ctx.attribute_count();
  std::vector<Concept> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    AttributeSet intent;
    for (std::size_t x = 0; x < m; ++x) {
      bool shared = true;
      for (std::size_t g = 0; g < n && shared; ++g) {
        if (((mask >> g) & 1U) && !ctx.incident(g, x)) shared = false;
      }
      if (shared) intent.insert(x);
    }
    ObjectSet extent;
    for (std::size_t g = 0; g < n; ++g) {
      bool has_all = true;
      for (std::size_t x = 0; x < m && has_all; ++x) {
        if (intent.contains(x) && !ctx.incident(g, x)) has_all = false;
      }
      if (has_all) extent.insert(g);
    }
    Concept c{extent, intent};
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

/// m(X) = bel(X) - Σ_{Y ⊊ X} m(Y), in order of increasing |X|.
inline std::vector<Rational> brute_mass_from_bel_set(std::size_t carrier, const std::vector<Rational>& bel) {
  const std::size_t count = std::size_t{1} << carrier;
  std::vector<Subset> order(count);
  for (Subset x = 0; x < count; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [](Subset a, Subset b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::vector<Rational> mass(count);
  for (Subset x : order) {
    Rational below = 0;
    for (Subset y = 0; y < count; ++y) {
      if (y != x && (y & ~x) == 0) below += mass[y];
    }
    mass[x] = bel[x] - below;
  }
  return mass;
}

/// Inner/outer measure as sup/inf of μ over the whole algebra (all 2^#blocks
/// unions of blocks), without the adjoint shortcuts.
inline Rational brute_inner_measure(const ProbabilitySpace& sp, const IndexSet& y) {
  const auto& blocks = sp.blocks();
  Rational best = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << blocks.size()); ++pick) {
    IndexSet element;
    Rational mu = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if ((pick >> b) & 1U) {
        element |= blocks[b];
        mu += sp.measure()[b];
      }
    }
    if (element.subset_of(y) && mu > best) best = mu;
  }
  return best;
}

inline Rational brute_outer_measure(const ProbabilitySpace& sp, const IndexSet& y) {
  const auto& blocks = sp.blocks();
  Rational best = 1;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << blocks.size()); ++pick) {
    IndexSet element;
    Rational mu = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if ((pick >> b) & 1U) {
        element |= blocks[b];
        mu += sp.measure()[b];
      }
    }
    if (y.subset_of(element) && mu < best) best = mu;
  }
  return best;
}

/// sup / inf of μ over every Boolean combination ∨_U d* of the product-lattice
/// atoms, compared coordinatewise against h(c)(a) = c ∧ a.
struct ProductMeasures {
  Rational inner;
  Rational outer;
};

inline ProductMeasures brute_product_measures(const ConceptRepresentation& rep, ConceptIndex c) {
  const auto& lat = *rep.lattice;
  const std::size_t n = lat.size();
  if (n > 16) throw CapacityError("brute_product_measures is exponential in the concept count");
  std::vector<ConceptIndex> image(n);
  for (ConceptIndex a = 0; a < n; ++a) image[a] = lat.meet(c, a);

  Rational inner = 0;
  Rational outer = 1;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << n); ++pick) {
    std::vector<ConceptIndex> element(n, lat.bottom());
    Rational mu = 0;
    for (ConceptIndex d = 0; d < n; ++d) {
      if (!((pick >> d) & 1U)) continue;
      mu += rep.space.measure[d];
      for (ConceptIndex a = 0; a < n; ++a) element[a] = lat.join(element[a], rep.space.atoms[d][a]);
    }
    bool below = true, above = true;
    for (ConceptIndex a = 0; a < n; ++a) {
      if (!lat.leq(element[a], image[a])) below = false;
      if (!lat.leq(image[a], element[a])) above = false;
    }
    if (below && mu > inner) inner = mu;
    if (above && mu < outer) outer = mu;
  }
  return {inner, outer};
}

// ---------------------------------------------------------------------------
// Seeded generators. std::mt19937_64 is fully specified by the standard, and
// the reductions below avoid the implementation-defined distributions, so a
// seed yields the same structures on every platform.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline FormalContext random_context(std::uint64_t seed, std::size_t n_objects, std::size_t n_attributes,
                                    double density) {
  Rng rng(seed);
  std::vector<std::string> objects, attributes;
  for (std::size_t g = 0; g < n_objects; ++g) objects.push_back("o" + std::to_string(g + 1));
  for (std::size_t m = 0; m < n_attributes; ++m) attributes.push_back("a" + std::to_string(m + 1));
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  for (std::size_t g = 0; g < n_objects; ++g) {
    for (std::size_t m = 0; m < n_attributes; ++m) {
      if (rng.chance(density)) incidence.emplace_back(g, m);
    }
  }
  return FormalContext(std::move(objects), std::move(attributes), incidence);
}

/// Splits `units` into `parts` positive integers.
inline std::vector<std::uint64_t> random_composition(Rng& rng, std::uint64_t units, std::size_t parts) {
  std::vector<std::uint64_t> cuts;
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t i = 1; i < units; ++i) candidates.push_back(i);
  rng.shuffle(candidates);
  cuts.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(parts - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> out;
  std::uint64_t prev = 0;
  for (auto cut : cuts) {
    out.push_back(cut - prev);
    prev = cut;
  }
  out.push_back(units - prev);
  return out;
}

/// Random weights over `eligible` with common denominator at most max_denominator.
inline std::vector<std::pair<std::size_t, Rational>> random_weights(Rng& rng, std::vector<std::size_t> eligible,
                                                                     std::uint64_t max_denominator) {
  const std::uint64_t denominator = 1 + rng.below(max_denominator);
  const std::size_t k = 1 + static_cast<std::size_t>(rng.below(std::min<std::uint64_t>(eligible.size(), denominator)));
  rng.shuffle(eligible);
  const auto parts = random_composition(rng, denominator, k);
  std::vector<std::pair<std::size_t, Rational>> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(eligible[i], Rational(parts[i], denominator));
  return out;
}

/// Mass with denominators bounded by max_denominator, respecting the bottom proviso.
inline MassFunction random_mass(std::uint64_t seed, const std::shared_ptr<const ConceptLattice>& lattice,
                                std::uint64_t max_denominator = 64) {
  Rng rng(seed);
  std::vector<std::size_t> eligible;
  for (ConceptIndex c = 0; c < lattice->size(); ++c) {
    if (c != lattice->bottom() || !lattice->bottom_extent_empty()) eligible.push_back(c);
  }
  std::vector<Rational> values(lattice->size());
  for (const auto& [c, w] : random_weights(rng, eligible, max_denominator)) values[c] = w;
  return MassFunction(lattice, std::move(values));
}

/// A random context (at most 4 objects and 4 attributes) whose lattice has at
/// most max_concepts concepts. When require_empty_bottom is set, the context
/// is normalized so that no object holds every attribute.
inline std::shared_ptr<const ConceptLattice> random_lattice(std::uint64_t seed, std::size_t max_concepts,
                                                            bool require_empty_bottom = false) {
  Rng rng(seed);
  for (;;) {
    const std::size_t n_objects = 1 + rng.below(4);
    const std::size_t n_attributes = 1 + rng.below(4);
    const double density = 0.2 + 0.6 * static_cast<double>(rng.below(1000)) / 1000.0;
    FormalContext ctx = random_context(rng.below(~std::uint64_t{0}), n_objects, n_attributes, density);
    if (require_empty_bottom) ctx = normalize_no_universal_object(ctx);
    auto lattice = enumerate_concepts(ctx);
    if (lattice->size() <= max_concepts) return lattice;
  }
}

inline SetMassFunction random_set_mass(std::uint64_t seed, std::size_t carrier, std::uint64_t max_denominator = 64) {
  Rng rng(seed);
  std::vector<std::size_t> eligible;
  for (std::size_t x = 1; x < (std::size_t{1} << carrier); ++x) eligible.push_back(x);
  std::vector<Rational> values(std::size_t{1} << carrier);
  for (const auto& [x, w] : random_weights(rng, eligible, max_denominator)) values[x] = w;
  return SetMassFunction(carrier, std::move(values));
}

/// Random partition of {0..carrier-1} with a random measure (zero blocks allowed).
inline ProbabilitySpace random_partition_space(std::uint64_t seed, std::size_t carrier,
                                               std::uint64_t max_denominator = 64) {
  Rng rng(seed);
  std::vector<IndexSet> raw(carrier);
  for (std::size_t p = 0; p < carrier; ++p) raw[rng.below(carrier)].insert(p);
  std::vector<IndexSet> blocks;
  for (auto& b : raw) {
    if (!b.empty()) blocks.push_back(b);
  }
  const std::uint64_t denominator = 1 + rng.below(max_denominator);
  std::vector<std::uint64_t> units(blocks.size(), 0);
  for (std::uint64_t u = 0; u < denominator; ++u) ++units[rng.below(blocks.size())];
  std::vector<Rational> measure;
  for (auto u : units) measure.emplace_back(u, denominator);
  return ProbabilitySpace(carrier, std::move(blocks), std::move(measure));
}

/// Table of f over P(S) from a per-subset function.
inline std::vector<Rational> tabulate(std::size_t carrier, const std::function<Rational(const IndexSet&)>& f) {
  std::vector<Rational> table(std::size_t{1} << carrier);
  for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = f(IndexSet::from_mask(x));
  return table;
}

}  // namespace cdst::oracle
