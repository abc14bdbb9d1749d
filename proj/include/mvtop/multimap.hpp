#pragma once

#include <optional>
#include <vector>

#include "mvtop/finite_space.hpp"

namespace mvtop {

/// A multi-valued map dom => cod: every domain point is sent to a nonempty
/// subset of the codomain.
class MultiMap {
 public:
  /// Throws EmptyValue for an empty value and UnknownLabel for values
  /// outside the codomain or a table of the wrong length.
  MultiMap(SpacePtr dom, SpacePtr cod, std::vector<PointSet> values);

  const SpacePtr& dom() const { return dom_; }
  const SpacePtr& cod() const { return cod_; }
  const std::vector<PointSet>& values() const { return values_; }
  PointSet operator()(int x) const { return values_[x]; }
  /// Union of all values.
  PointSet range() const;

  /// Same spaces (by structure) and same values.
  friend bool operator==(const MultiMap& a, const MultiMap& b);

 private:
  SpacePtr dom_;
  SpacePtr cod_;
  std::vector<PointSet> values_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);

PointSet upper_inverse(const MultiMap& f, PointSet v);
PointSet lower_inverse(const MultiMap& f, PointSet v);
/// Inverse of an m-function on a nonempty subset: {x : f(x) in d}. Throws
/// EmptySubset.
PointSet subset_inverse(const MultiMap& f, PointSet d);

struct Semicontinuity {
  bool usc = false;
  bool lsc = false;
  bool m_continuous = false;
};

/// Definitional check against every open set of the codomain.
Semicontinuity semicontinuity(const MultiMap& f);

/// Same answer as semicontinuity(f).m_continuous, computed from minimal
/// neighbourhoods only: y in U_x must imply hyper_step(f(x), f(y)).
bool is_m_continuous(const MultiMap& f);

/// (g . f)(x) = union of g(y) over y in f(x). Throws DomainMismatch.
MultiMap compose(const MultiMap& g, const MultiMap& f);

MultiMap identity_map(const SpacePtr& x);
/// Throws EmptyConstantValue.
MultiMap constant_map(const SpacePtr& dom, const SpacePtr& cod, PointSet value);
/// Inclusion of the subspace on `c` into `x`.
MultiMap inclusion_map(const SpacePtr& x, PointSet c);
/// Coordinate projection (index 1 or 2) of a space built by product().
/// Throws NotAProduct.
MultiMap projection_map(const SpacePtr& product_space, int index);
/// (a, b)(x) = a(x) x b(x) into `target`, which must be product(a.cod, b.cod).
MultiMap pairing(const MultiMap& a, const MultiMap& b, const SpacePtr& target);

struct Classification {
  bool injective = false;
  bool surjective = false;
  bool m_homeomorphism = false;
  std::optional<MultiMap> inverse;
};

/// Injective means pairwise disjoint images; surjective means the images
/// cover the codomain. The pointwise inverse b -> {a : b in f(a)} is
/// returned only for m-homeomorphisms.
Classification classify(const MultiMap& f);

/// True iff for every a the intersection of beta(b) over b in alpha(a) is
/// exactly {a}. Throws DomainMismatch.
bool is_m_section_pair(const MultiMap& alpha, const MultiMap& beta);

/// Restriction to the subspace on `c`. Throws EmptySubset.
MultiMap restrict_map(const MultiMap& f, PointSet c);

}  // namespace mvtop
