#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cdst/error.hpp"
#include "cdst/index_set.hpp"
#include "cdst/rational.hpp"

namespace cdst {

/// Finite probability space whose σ-algebra is given by its atoms: a partition
/// of the carrier {0, ..., n-1} into nonempty blocks, each with a measure.
/// Blocks of measure 0 are allowed.
class ProbabilitySpace {
 public:
  ProbabilitySpace(std::size_t carrier_size, std::vector<IndexSet> blocks, std::vector<Rational> measure,
                   std::vector<std::string> names = {})
      : n_(carrier_size), blocks_(std::move(blocks)), measure_(std::move(measure)), names_(std::move(names)) {
    IndexSet::check_index_bound(n_);
    if (blocks_.size() != measure_.size()) throw InputError("one measure value per block is required");
    if (!names_.empty() && names_.size() != n_) throw InputError("carrier names do not match the carrier size");
    IndexSet covered;
    Rational total = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].empty()) throw InputError("block " + std::to_string(b) + " is empty");
      if (blocks_[b].bound() > n_) throw InputError("block " + std::to_string(b) + " leaves the carrier");
      if (covered.intersects(blocks_[b])) throw InputError("block " + std::to_string(b) + " overlaps an earlier block");
      if (measure_[b] < 0) throw InputError("negative measure on block " + std::to_string(b));
      covered |= blocks_[b];
      total += measure_[b];
    }
    if (!(covered == IndexSet::full(n_))) throw InputError("blocks do not cover the carrier");
    if (total != 1) throw InputError("block measures sum to " + to_exact(total) + ", not 1");
  }

  std::size_t carrier_size() const { return n_; }
  IndexSet carrier() const { return IndexSet::full(n_); }
  const std::vector<IndexSet>& blocks() const { return blocks_; }
  const std::vector<Rational>& measure() const { return measure_; }
  const std::vector<std::string>& names() const { return names_; }

  bool in_algebra(const IndexSet& y) const {
    for (const auto& block : blocks_) {
      if (block.intersects(y) && !block.subset_of(y)) return false;
    }
    return y.subset_of(carrier());
  }

  /// ι(Y): union of the blocks contained in Y, the largest algebra element below Y.
  IndexSet iota(const IndexSet& y) const {
    IndexSet out;
    for (const auto& block : blocks_) {
      if (block.subset_of(y)) out |= block;
    }
    return out;
  }

  /// γ(Y): union of the blocks meeting Y, the smallest algebra element above Y.
  IndexSet gamma(const IndexSet& y) const {
    IndexSet out;
    for (const auto& block : blocks_) {
      if (block.intersects(y)) out |= block;
    }
    return out;
  }

  /// μ of an algebra element.
  Rational mu(const IndexSet& element) const {
    if (!in_algebra(element)) throw InputError("set is not a union of blocks");
    Rational total = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      if (blocks_[b].subset_of(element)) total += measure_[b];
    }
    return total;
  }

  Rational inner_measure(const IndexSet& y) const { return mu(iota(y)); }
  Rational outer_measure(const IndexSet& y) const { return mu(gamma(y)); }

 private:
  std::size_t n_;
  std::vector<IndexSet> blocks_;
  std::vector<Rational> measure_;
  std::vector<std::string> names_;
};

/// Atoms of a Boolean algebra embedded in some concept lattice, with their
/// measure. The embedding itself lives with whoever builds the space.
template <typename Element>
struct ConceptualProbabilitySpace {
  std::vector<Element> atoms;
  std::vector<Rational> measure;

  Rational total() const {
    Rational sum = 0;
    for (const auto& v : measure) sum += v;
    return sum;
  }
};

}  // namespace cdst
