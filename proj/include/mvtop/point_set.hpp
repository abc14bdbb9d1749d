#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

namespace mvtop {

/// Hard ceiling on the number of points any space may carry. Point sets are
/// stored as 32-bit masks.
inline constexpr int kMaxPoints = 32;

/// A subset of the points of a finite space, stored as a bit mask over
/// dense 0-based indices. The universe size is owned by the space; a set is
/// "within" a universe of n points when no member index reaches n.
class PointSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    iterator() = default;
    explicit iterator(std::uint32_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint32_t bits) : bits_(bits) {}
  PointSet(std::initializer_list<int> members) {
    for (int m : members) insert(m);
  }

  static constexpr PointSet singleton(int i) { return PointSet(std::uint32_t{1} << i); }
  static constexpr PointSet full(int n) {
    return PointSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(PointSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr bool within(int n) const { return subset_of(full(n)); }
  /// Smallest member; undefined on the empty set.
  constexpr int front() const { return std::countr_zero(bits_); }

  void insert(int i) { bits_ |= std::uint32_t{1} << i; }
  void erase(int i) { bits_ &= ~(std::uint32_t{1} << i); }

  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }
  std::vector<int> members() const { return {begin(), end()}; }

  friend constexpr PointSet operator|(PointSet a, PointSet b) { return PointSet(a.bits_ | b.bits_); }
  friend constexpr PointSet operator&(PointSet a, PointSet b) { return PointSet(a.bits_ & b.bits_); }
  friend constexpr PointSet operator-(PointSet a, PointSet b) { return PointSet(a.bits_ & ~b.bits_); }
  PointSet& operator|=(PointSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  PointSet& operator&=(PointSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr PointSet complement(int n) const { return full(n) - *this; }

  friend constexpr bool operator==(PointSet, PointSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Canonical order: ascending cardinality, then lexicographic on the sorted
/// member lists. Every enumeration that feeds a certificate uses this order.
inline bool canonical_less(PointSet a, PointSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Same cardinality: the set whose first differing member is smaller wins.
  std::uint32_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  int first = std::countr_zero(diff);
  return a.contains(first);
}

struct CanonicalLess {
  bool operator()(PointSet a, PointSet b) const { return canonical_less(a, b); }
};

/// All subsets of `universe`, nonempty ones only when requested, in
/// canonical order.
std::vector<PointSet> subsets_of(PointSet universe, bool include_empty = false);

std::string to_string(PointSet s);

}  // namespace mvtop
