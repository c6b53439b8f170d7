#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdst/error.hpp"
#include "cdst/lattice.hpp"
#include "cdst/limits.hpp"
#include "cdst/rational.hpp"

namespace cdst {

/// Normalized mass assignment over the concepts of one lattice.
///
/// Invariants: values are non-negative and sum to exactly 1, and the bottom
/// concept carries no mass when its extent is empty. Bottom may carry mass when
/// some object has every attribute.
class MassFunction {
 public:
  MassFunction(std::shared_ptr<const ConceptLattice> lattice, std::vector<Rational> values)
      : lattice_(std::move(lattice)), values_(std::move(values)) {
    if (!lattice_) throw InputError("mass function needs a lattice");
    if (values_.size() != lattice_->size()) {
      throw InputError("mass function has " + std::to_string(values_.size()) + " values for " +
                       std::to_string(lattice_->size()) + " concepts");
    }
    Rational total = 0;
    for (ConceptIndex c = 0; c < values_.size(); ++c) {
      if (values_[c] < 0) throw InputError("negative mass " + to_exact(values_[c]) + " on concept #" + std::to_string(c));
      total += values_[c];
    }
    if (total != 1) throw InputError("masses sum to " + to_exact(total) + ", not 1");
    if (lattice_->bottom_extent_empty() && values_[lattice_->bottom()] != 0) {
      throw InputError("bottom concept has empty extent but carries mass " + to_exact(values_[lattice_->bottom()]));
    }
  }

  /// All mass on top: total ignorance.
  static MassFunction vacuous(std::shared_ptr<const ConceptLattice> lattice) {
    std::vector<Rational> values(lattice->size());
    values[lattice->top()] = 1;
    return MassFunction(std::move(lattice), std::move(values));
  }

  const ConceptLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const ConceptLattice>& lattice_ptr() const { return lattice_; }
  const Rational& operator[](ConceptIndex c) const { return values_.at(c); }
  const std::vector<Rational>& values() const { return values_; }

  std::vector<ConceptIndex> support() const {
    std::vector<ConceptIndex> out;
    for (ConceptIndex c = 0; c < values_.size(); ++c) {
      if (values_[c] != 0) out.push_back(c);
    }
    return out;
  }

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    return a.lattice_ == b.lattice_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const ConceptLattice> lattice_;
  std::vector<Rational> values_;
};

/// bel(c) = sum of m(c') over c' <= c.
inline Rational bel(const MassFunction& m, ConceptIndex c) {
  const auto& lat = m.lattice();
  Rational total = 0;
  for (ConceptIndex d : m.support()) {
    if (lat.leq(d, c)) total += m[d];
  }
  return total;
}

/// pl(c) = sum of m(c') over c' whose meet with c has a nonempty extent.
inline Rational pl(const MassFunction& m, ConceptIndex c) {
  const auto& lat = m.lattice();
  Rational total = 0;
  for (ConceptIndex d : m.support()) {
    if (!lat[lat.meet(d, c)].extent.empty()) total += m[d];
  }
  return total;
}

struct BeliefTable {
  std::vector<Rational> bel;
  std::vector<Rational> pl;
};

inline BeliefTable belief_table(const MassFunction& m) {
  BeliefTable table;
  for (ConceptIndex c = 0; c < m.lattice().size(); ++c) {
    table.bel.push_back(bel(m, c));
    table.pl.push_back(pl(m, c));
  }
  return table;
}

/// Recovers the mass inducing a per-concept belief table by the recursion
/// m(c) = bel(c) - sum of m(c') over c' < c, evaluated bottom-up.
///
/// Throws NotABeliefFunctionError naming a witness concept when bel(top) != 1,
/// bel is not monotone, or a recovered mass is negative or violates the
/// bottom proviso.
inline MassFunction mass_from_bel_lattice(std::shared_ptr<const ConceptLattice> lattice, std::span<const Rational> bel) {
  const auto& lat = *lattice;
  if (bel.size() != lat.size()) throw InputError("belief table size does not match the lattice");
  if (bel[lat.top()] != 1) throw NotABeliefFunctionError("bel(top) = " + to_exact(bel[lat.top()]) + ", not 1");
  for (ConceptIndex c = 0; c < lat.size(); ++c) {
    for (ConceptIndex d = 0; d < lat.size(); ++d) {
      if (lat.leq(c, d) && bel[c] > bel[d]) {
        throw NotABeliefFunctionError("bel is not monotone: concept #" + std::to_string(c) + " <= #" +
                                      std::to_string(d) + " but " + to_exact(bel[c]) + " > " + to_exact(bel[d]));
      }
    }
  }

  std::vector<Rational> mass(lat.size());
  for (ConceptIndex c : lat.ascending_order()) {
    Rational below = 0;
    for (ConceptIndex d = 0; d < lat.size(); ++d) {
      if (lat.less(d, c)) below += mass[d];
    }
    mass[c] = bel[c] - below;
    if (mass[c] < 0) {
      throw NotABeliefFunctionError("recovered mass " + to_exact(mass[c]) + " < 0 at concept #" + std::to_string(c));
    }
  }
  if (lat.bottom_extent_empty() && mass[lat.bottom()] != 0) {
    throw NotABeliefFunctionError("recovered mass " + to_exact(mass[lat.bottom()]) +
                                  " on the bottom concept, whose extent is empty");
  }
  return MassFunction(std::move(lattice), std::move(mass));
}

// ---------------------------------------------------------------------------
// Set-level evidence over the powerset of S = {0, ..., n-1}. Subsets are bit
// masks.

using Subset = std::uint32_t;

inline std::size_t subset_size(Subset x) { return static_cast<std::size_t>(__builtin_popcount(x)); }
inline bool subset_of(Subset x, Subset y) { return (x & ~y) == 0; }

class SetMassFunction {
 public:
  SetMassFunction(std::size_t carrier_size, std::vector<Rational> values, const Limits& limits = Limits::current())
      : n_(carrier_size), values_(std::move(values)) {
    require_within(n_, limits.max_set_carrier, "carrier size");
    if (values_.size() != (std::size_t{1} << n_)) throw InputError("set mass needs one value per subset");
    Rational total = 0;
    for (Subset x = 0; x < values_.size(); ++x) {
      if (values_[x] < 0) throw InputError("negative mass on subset " + std::to_string(x));
      total += values_[x];
    }
    if (total != 1) throw InputError("masses sum to " + to_exact(total) + ", not 1");
    if (values_[0] != 0) throw InputError("empty set carries mass " + to_exact(values_[0]));
  }

  static SetMassFunction point(std::size_t carrier_size, Subset focal) {
    std::vector<Rational> values(std::size_t{1} << carrier_size);
    values.at(focal) = 1;
    return SetMassFunction(carrier_size, std::move(values));
  }

  std::size_t carrier_size() const { return n_; }
  Subset full() const { return static_cast<Subset>((std::size_t{1} << n_) - 1); }
  std::size_t subset_count() const { return values_.size(); }
  const Rational& operator[](Subset x) const { return values_.at(x); }
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const SetMassFunction& a, const SetMassFunction& b) {
    return a.n_ == b.n_ && a.values_ == b.values_;
  }

 private:
  std::size_t n_;
  std::vector<Rational> values_;
};

/// bel(X) = sum of m(Y) over Y ⊆ X (submask enumeration).
inline Rational bel_set(const SetMassFunction& m, Subset x) {
  Rational total = m[0];
  for (Subset y = x; y != 0; y = (y - 1) & x) total += m[y];
  return total;
}

/// pl(X) = sum of m(Y) over Y meeting X.
inline Rational pl_set(const SetMassFunction& m, Subset x) {
  Rational total = 0;
  for (Subset y = 1; y < m.subset_count(); ++y) {
    if ((y & x) != 0) total += m[y];
  }
  return total;
}

inline std::vector<Rational> bel_set_table(const SetMassFunction& m) {
  std::vector<Rational> table(m.subset_count());
  for (Subset x = 0; x < table.size(); ++x) table[x] = bel_set(m, x);
  return table;
}

inline std::vector<Rational> pl_set_table(const SetMassFunction& m) {
  std::vector<Rational> table(m.subset_count());
  for (Subset x = 0; x < table.size(); ++x) table[x] = pl_set(m, x);
  return table;
}

/// Möbius inversion m(X) = sum over Y ⊆ X of (-1)^|X∖Y| bel(Y).
inline SetMassFunction mass_from_bel_set(std::size_t carrier_size, std::span<const Rational> bel,
                                         const Limits& limits = Limits::current()) {
  require_within(carrier_size, limits.max_set_carrier, "carrier size");
  const std::size_t count = std::size_t{1} << carrier_size;
  if (bel.size() != count) throw InputError("belief table needs one value per subset");
  const Subset full = static_cast<Subset>(count - 1);
  if (bel[full] != 1) throw NotABeliefFunctionError("bel(S) = " + to_exact(bel[full]) + ", not 1");

  std::vector<Rational> mass(count);
  for (Subset x = 0; x < count; ++x) {
    Rational total = 0;
    for (Subset y = x;; y = (y - 1) & x) {
      if (subset_size(x & ~y) % 2 == 0) {
        total += bel[y];
      } else {
        total -= bel[y];
      }
      if (y == 0) break;
    }
    if (total < 0) {
      throw NotABeliefFunctionError("recovered mass " + to_exact(total) + " < 0 at subset mask " + std::to_string(x));
    }
    mass[x] = std::move(total);
  }
  if (mass[0] != 0) throw NotABeliefFunctionError("bel(∅) = " + to_exact(mass[0]) + ", not 0");
  return SetMassFunction(carrier_size, std::move(mass), limits);
}

}  // namespace cdst
