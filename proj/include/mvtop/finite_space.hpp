#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvtop/error.hpp"
#include "mvtop/point_set.hpp"

namespace mvtop {

class FiniteSpace;
using SpacePtr = std::shared_ptr<const FiniteSpace>;

/// Open-set enumeration refuses spaces larger than this.
inline constexpr int kMaxEnumerablePoints = 20;

/// Factor record kept by spaces built with product(); projections need it.
struct ProductFactors {
  SpacePtr left;
  SpacePtr right;
};

/// A finite topological space given by the minimal open neighbourhood U_x of
/// every point. Immutable once validated.
///
/// The specialisation preorder used throughout is x <= y iff y is in U_x,
/// so open sets are the up-closed sets and every U_x has x as a minimum.
class FiniteSpace {
 public:
  /// Checks labels and both neighbourhood axioms; throws Error naming the
  /// first violated rule (DuplicateLabel, UnknownLabel, MissingSelf,
  /// NotTransitive, SizeLimit).
  static FiniteSpace validate(std::vector<std::string> labels,
                              const std::vector<std::vector<std::string>>& neighbourhoods);
  static FiniteSpace from_masks(std::vector<std::string> labels, std::vector<PointSet> min_open);

  int size() const { return static_cast<int>(labels_.size()); }
  PointSet points() const { return PointSet::full(size()); }
  const std::string& label(int x) const { return labels_.at(x); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(const std::string& label) const;
  /// Throws UnknownLabel.
  int index_of(const std::string& label) const;

  PointSet min_open(int x) const { return min_open_[x]; }
  const std::vector<PointSet>& min_opens() const { return min_open_; }
  /// Closure of the single point x: every y with x in U_y.
  PointSet point_closure(int x) const { return point_closure_[x]; }
  /// Smallest open set containing `a`.
  PointSet open_hull(PointSet a) const;

  bool is_open(PointSet a) const;
  bool is_closed(PointSet a) const { return is_open(a.complement(size())); }
  PointSet closure(PointSet a) const;

  /// Every open set exactly once, ascending by cardinality then
  /// lexicographically. Includes the empty set and the whole space.
  std::vector<PointSet> open_sets() const;
  std::vector<PointSet> closed_sets() const;

  bool leq(int x, int y) const { return min_open_[x].contains(y); }
  bool is_t0() const;

  const std::optional<ProductFactors>& factors() const { return factors_; }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.labels_ == b.labels_ && a.min_open_ == b.min_open_;
  }

 private:
  friend FiniteSpace product(const SpacePtr& x, const SpacePtr& y);

  FiniteSpace(std::vector<std::string> labels, std::vector<PointSet> min_open);

  std::vector<std::string> labels_;
  std::vector<PointSet> min_open_;
  std::vector<PointSet> point_closure_;
  std::optional<ProductFactors> factors_;
};

inline SpacePtr share(FiniteSpace space) { return std::make_shared<const FiniteSpace>(std::move(space)); }

/// Row-major product: point (x, y) has index x * |Y| + y and label "x,y".
FiniteSpace product(const SpacePtr& x, const SpacePtr& y);

struct Subspace {
  FiniteSpace space;
  std::vector<int> embedding;  ///< subspace index -> ambient index
};

/// Points of `c` with the induced neighbourhoods U_x intersected with `c`.
/// Throws EmptySubspace.
Subspace subspace(const FiniteSpace& x, PointSet c);

/// True when `a` and `b` carry the same neighbourhood structure under the
/// index bijection `perm` (a-index -> b-index).
bool is_isomorphism(const FiniteSpace& a, const FiniteSpace& b, const std::vector<int>& perm);

}  // namespace mvtop
