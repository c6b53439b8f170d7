#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdst/evidence.hpp"

namespace cdst {

struct CombinationReport {
  MassFunction result;
  // Product mass that fell on meets with empty extent, before renormalization.
  Rational conflict;
};

/// Dempster combination on a concept lattice: each product m1(c1)·m2(c2) goes
/// to c1 ∧ c2 and pairs whose meet has empty extent are discarded, then the
/// survivors are renormalized.
inline CombinationReport combine(const MassFunction& m1, const MassFunction& m2) {
  if (m1.lattice_ptr() != m2.lattice_ptr()) throw InputError("cannot combine masses over different lattices");
  const auto& lat = m1.lattice();

  std::vector<Rational> joint(lat.size());
  Rational normalizer = 0;
  for (ConceptIndex c1 : m1.support()) {
    for (ConceptIndex c2 : m2.support()) {
      const ConceptIndex c = lat.meet(c1, c2);
      if (lat[c].extent.empty()) continue;
      Rational product = m1[c1] * m2[c2];
      normalizer += product;
      joint[c] += product;
    }
  }
  if (normalizer == 0) throw TotalConflictError("total conflict: every focal pair meets in an empty extent");
  for (auto& v : joint) v /= normalizer;
  return {MassFunction(m1.lattice_ptr(), std::move(joint)), Rational(1 - normalizer)};
}

/// Left fold of combine. The reported conflict is that of the final step.
inline CombinationReport combine_many(std::span<const MassFunction> masses) {
  if (masses.empty()) throw InputError("combine_many needs at least one mass function");
  CombinationReport acc{masses.front(), Rational(0)};
  for (std::size_t step = 1; step < masses.size(); ++step) {
    try {
      acc = combine(acc.result, masses[step]);
    } catch (const TotalConflictError&) {
      throw TotalConflictError("total conflict at combination step " + std::to_string(step) + " (adding mass #" +
                                   std::to_string(step + 1) + ")",
                               step);
    }
  }
  return acc;
}

struct SetCombinationReport {
  SetMassFunction result;
  Rational conflict;
};

/// Classical Dempster rule over P(S): products go to the literal intersection.
inline SetCombinationReport combine_set(const SetMassFunction& m1, const SetMassFunction& m2) {
  if (m1.carrier_size() != m2.carrier_size()) throw InputError("cannot combine masses over different carriers");
  std::vector<Rational> joint(m1.subset_count());
  Rational normalizer = 0;
  for (Subset x = 1; x < m1.subset_count(); ++x) {
    if (m1[x] == 0) continue;
    for (Subset y = 1; y < m2.subset_count(); ++y) {
      if (m2[y] == 0 || (x & y) == 0) continue;
      Rational product = m1[x] * m2[y];
      normalizer += product;
      joint[x & y] += product;
    }
  }
  if (normalizer == 0) throw TotalConflictError("total conflict: every focal pair is disjoint");
  for (auto& v : joint) v /= normalizer;
  return {SetMassFunction(m1.carrier_size(), std::move(joint)), Rational(1 - normalizer)};
}

}  // namespace cdst
