#pragma once

#include <vector>

#include "mvtop/finite_space.hpp"

namespace mvtop {

/// Codomains larger than this are refused by the homotopy machinery; the
/// step table is indexed by subset mask.
inline constexpr int kMaxHyperspacePoints = 10;

/// One deformation step between value sets: for every open W,
/// s in W implies t in W, and s meeting W implies t meeting W.
///
/// On a finite space this reduces to t being inside the open hull of s and
/// t meeting U_p for every p in s. Throws EmptyValue.
bool hyper_step(const FiniteSpace& y, PointSet s, PointSet t);

/// Precomputed hyper-step relation on the nonempty subsets of a codomain.
/// Reflexive and transitive. Immutable after construction.
class HyperStepTable {
 public:
  /// Throws SizeLimit above kMaxHyperspacePoints.
  explicit HyperStepTable(const FiniteSpace& cod);

  int points() const { return n_; }
  bool step(PointSet s, PointSet t) const {
    return relation_[static_cast<std::size_t>(s.bits()) * stride_ + t.bits()];
  }
  /// Successors t of s (step(s, t)), canonical order, s included.
  const std::vector<PointSet>& successors(PointSet s) const { return succ_[s.bits()]; }
  const std::vector<PointSet>& predecessors(PointSet s) const { return pred_[s.bits()]; }
  /// Every nonempty subset, canonical order.
  const std::vector<PointSet>& values() const { return values_; }

 private:
  int n_;
  std::size_t stride_;
  std::vector<bool> relation_;
  std::vector<std::vector<PointSet>> succ_;
  std::vector<std::vector<PointSet>> pred_;
  std::vector<PointSet> values_;
};

}  // namespace mvtop
