#pragma once

#include <algorithm>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "cdst/error.hpp"

namespace cdst {

/// Finite set of indices into some ordered universe (objects, attributes,
/// carrier points). Fixed-width bit vector; indices must be below kCapacity.
class IndexSet {
 public:
  static constexpr std::size_t kCapacity = 256;

  IndexSet() = default;

  IndexSet(std::initializer_list<std::size_t> indices) {
    for (std::size_t i : indices) insert(i);
  }

  static IndexSet full(std::size_t n) {
    check_index_bound(n);
    IndexSet set;
    for (std::size_t i = 0; i < n; ++i) set.bits_.set(i);
    return set;
  }

  static IndexSet from_mask(std::uint64_t mask) {
    IndexSet set;
    for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
      if (mask & 1U) set.bits_.set(i);
    }
    return set;
  }

  static void check_index_bound(std::size_t n) {
    if (n > kCapacity) {
      throw CapacityError("universe of " + std::to_string(n) + " elements exceeds the index-set width of " +
                          std::to_string(kCapacity));
    }
  }

  void insert(std::size_t i) {
    check_index_bound(i + 1);
    bits_.set(i);
  }
  void erase(std::size_t i) {
    if (i < kCapacity) bits_.reset(i);
  }
  bool contains(std::size_t i) const { return i < kCapacity && bits_.test(i); }

  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool subset_of(const IndexSet& other) const { return (bits_ & ~other.bits_).none(); }
  bool intersects(const IndexSet& other) const { return (bits_ & other.bits_).any(); }

  // Largest element + 1, or 0 for the empty set.
  std::size_t bound() const {
    for (std::size_t i = kCapacity; i > 0; --i) {
      if (bits_.test(i - 1)) return i;
    }
    return 0;
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    const std::size_t end = bound();
    for (std::size_t i = 0; i < end; ++i) {
      if (bits_.test(i)) out.push_back(i);
    }
    return out;
  }

  std::uint64_t to_mask() const {
    if (bound() > 64) throw CapacityError("index set does not fit a 64-bit mask");
    return (bits_ & std::bitset<kCapacity>(~std::uint64_t{0})).to_ullong();
  }

  IndexSet& operator&=(const IndexSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  IndexSet& operator|=(const IndexSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  IndexSet& operator-=(const IndexSet& o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }
  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.bits_ == b.bits_; }

  /// Lexicographic comparison of the ascending element lists.
  friend bool lexicographic_less(const IndexSet& a, const IndexSet& b) {
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
  }

  std::size_t hash() const { return std::hash<std::bitset<kCapacity>>{}(bits_); }

 private:
  std::bitset<kCapacity> bits_;
};

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

/// Renders as `{a,b}` using the given names (indices when names is empty).
inline std::string format_set(const IndexSet& set, const std::vector<std::string>& names = {}) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : set.elements()) {
    if (!first) out += ',';
    first = false;
    out += i < names.size() ? names[i] : std::to_string(i);
  }
  out += '}';
  return out;
}

}  // namespace cdst
