#include "mvtop/hyperspace.hpp"

#include <algorithm>

namespace mvtop {

bool hyper_step(const FiniteSpace& y, PointSet s, PointSet t) {
  if (s.empty() || t.empty()) throw Error(ErrorKind::EmptyValue, "hyper-step between empty value sets");
  if (!t.subset_of(y.open_hull(s))) return false;
  for (int p : s)
    if (!t.intersects(y.min_open(p))) return false;
  return true;
}

HyperStepTable::HyperStepTable(const FiniteSpace& cod) : n_(cod.size()) {
  if (n_ > kMaxHyperspacePoints)
    throw Error(ErrorKind::SizeLimit, "hyperspace of " + std::to_string(n_) + " points exceeds " +
                                          std::to_string(kMaxHyperspacePoints));
  stride_ = std::size_t{1} << n_;
  relation_.assign(stride_ * stride_, false);
  succ_.resize(stride_);
  pred_.resize(stride_);
  values_ = subsets_of(cod.points());
  for (PointSet s : values_) {
    PointSet hull = cod.open_hull(s);
    // Successors live inside the open hull of s; enumerate its submasks.
    for (PointSet t : subsets_of(hull)) {
      bool ok = true;
      for (int p : s)
        if (!t.intersects(cod.min_open(p))) {
          ok = false;
          break;
        }
      if (ok) relation_[static_cast<std::size_t>(s.bits()) * stride_ + t.bits()] = true;
    }
  }
  for (PointSet s : values_)
    for (PointSet t : values_)
      if (step(s, t)) {
        succ_[s.bits()].push_back(t);
        pred_[t.bits()].push_back(s);
      }
}

}  // namespace mvtop
