#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cdst/context.hpp"
#include "cdst/limits.hpp"

namespace cdst {

struct Concept {
  ObjectSet extent;
  AttributeSet intent;

  friend bool operator==(const Concept& a, const Concept& b) { return a.extent == b.extent && a.intent == b.intent; }
};

using ConceptIndex = std::size_t;

/// All formal concepts of a context with precomputed order, meet and join.
///
/// Concepts are stored in canonical order: descending extent size, ties broken
/// by lexicographic extent. Index 0 is therefore always the top concept and the
/// last index the bottom one.
class ConceptLattice {
 public:
  ConceptLattice(FormalContext context, std::vector<Concept> concepts) : context_(std::move(context)) {
    std::sort(concepts.begin(), concepts.end(), [](const Concept& a, const Concept& b) {
      if (a.extent.size() != b.extent.size()) return a.extent.size() > b.extent.size();
      return lexicographic_less(a.extent, b.extent);
    });
    concepts_ = std::move(concepts);
    const std::size_t n = concepts_.size();
    for (ConceptIndex i = 0; i < n; ++i) {
      by_extent_.emplace(concepts_[i].extent, i);
      by_intent_.emplace(concepts_[i].intent, i);
    }
    top_ = 0;
    bottom_ = n - 1;
    leq_.assign(n * n, false);
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (ConceptIndex i = 0; i < n; ++i) {
      for (ConceptIndex j = 0; j < n; ++j) {
        leq_[i * n + j] = concepts_[i].extent.subset_of(concepts_[j].extent);
        meet_[i * n + j] = by_extent_.at(concepts_[i].extent & concepts_[j].extent);
        join_[i * n + j] = by_intent_.at(concepts_[i].intent & concepts_[j].intent);
      }
    }
  }

  const FormalContext& context() const { return context_; }
  std::size_t size() const { return concepts_.size(); }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const Concept& operator[](ConceptIndex i) const { return concepts_.at(i); }

  ConceptIndex top() const { return top_; }
  ConceptIndex bottom() const { return bottom_; }

  bool leq(ConceptIndex c, ConceptIndex d) const { return leq_[c * size() + d]; }
  bool less(ConceptIndex c, ConceptIndex d) const { return c != d && leq(c, d); }
  ConceptIndex meet(ConceptIndex c, ConceptIndex d) const { return meet_[c * size() + d]; }
  ConceptIndex join(ConceptIndex c, ConceptIndex d) const { return join_[c * size() + d]; }

  const Concept& meet(const Concept& c, const Concept& d) const { return concepts_[meet(index_of(c), index_of(d))]; }
  const Concept& join(const Concept& c, const Concept& d) const { return concepts_[join(index_of(c), index_of(d))]; }
  bool leq(const Concept& c, const Concept& d) const { return leq(index_of(c), index_of(d)); }

  std::optional<ConceptIndex> find_extent(const ObjectSet& extent) const {
    if (auto it = by_extent_.find(extent); it != by_extent_.end()) return it->second;
    return std::nullopt;
  }
  std::optional<ConceptIndex> find_intent(const AttributeSet& intent) const {
    if (auto it = by_intent_.find(intent); it != by_intent_.end()) return it->second;
    return std::nullopt;
  }

  ConceptIndex index_of(const Concept& c) const {
    auto found = find_extent(c.extent);
    if (!found || !(concepts_[*found] == c)) throw InputError("concept does not belong to this lattice");
    return *found;
  }

  bool bottom_extent_empty() const { return concepts_[bottom_].extent.empty(); }

  /// Cover pairs (lower, upper) of the Hasse diagram.
  std::vector<std::pair<ConceptIndex, ConceptIndex>> covers() const {
    std::vector<std::pair<ConceptIndex, ConceptIndex>> out;
    const std::size_t n = size();
    for (ConceptIndex lo = n; lo-- > 0;) {
      for (ConceptIndex hi = n; hi-- > 0;) {
        if (!less(lo, hi)) continue;
        bool covered = true;
        for (ConceptIndex mid = 0; mid < n && covered; ++mid) {
          if (less(lo, mid) && less(mid, hi)) covered = false;
        }
        if (covered) out.emplace_back(lo, hi);
      }
    }
    return out;
  }

  /// Bottom-up presentation order: ascending extent size, then lexicographic
  /// extent. A linear extension of the order.
  std::vector<ConceptIndex> ascending_order() const {
    std::vector<ConceptIndex> order(size());
    for (ConceptIndex i = 0; i < size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](ConceptIndex a, ConceptIndex b) {
      if (concepts_[a].extent.size() != concepts_[b].extent.size()) {
        return concepts_[a].extent.size() < concepts_[b].extent.size();
      }
      return lexicographic_less(concepts_[a].extent, concepts_[b].extent);
    });
    return order;
  }

 private:
  FormalContext context_;
  std::vector<Concept> concepts_;
  std::unordered_map<IndexSet, ConceptIndex, IndexSetHash> by_extent_;
  std::unordered_map<IndexSet, ConceptIndex, IndexSetHash> by_intent_;
  ConceptIndex top_ = 0;
  ConceptIndex bottom_ = 0;
  std::vector<bool> leq_;
  std::vector<ConceptIndex> meet_;
  std::vector<ConceptIndex> join_;
};

/// Every concept of ctx, via the intersection closure of the object intents.
inline std::shared_ptr<const ConceptLattice> enumerate_concepts(const FormalContext& ctx,
                                                                const Limits& limits = Limits::current()) {
  require_within(ctx.object_count(), limits.max_objects, "object count");

  // The full attribute set is the empty intersection (intent of ⊥).
  std::vector<AttributeSet> intents{ctx.all_attributes()};
  std::unordered_set<IndexSet, IndexSetHash> seen{ctx.all_attributes()};
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    const AttributeSet& row = ctx.object_intent(g);
    const std::size_t existing = intents.size();
    for (std::size_t k = 0; k < existing; ++k) {
      AttributeSet candidate = intents[k] & row;
      if (seen.insert(candidate).second) {
        intents.push_back(candidate);
        require_within(intents.size(), limits.max_concepts, "concept count");
      }
    }
  }

  std::vector<Concept> concepts;
  concepts.reserve(intents.size());
  for (const auto& intent : intents) concepts.push_back({ctx.down(intent), intent});
  return std::make_shared<const ConceptLattice>(ctx, std::move(concepts));
}

}  // namespace cdst
