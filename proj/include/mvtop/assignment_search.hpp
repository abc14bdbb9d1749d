#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "mvtop/finite_space.hpp"
#include "mvtop/hyperspace.hpp"

namespace mvtop {

/// Backtracking enumerator of m-continuous value tables.
///
/// Each domain point draws its value from its own candidate list; a partial
/// table is rejected as soon as two assigned points x, y with y in U_x fail
/// hyper_step(value(x), value(y)). With `index_order` the points are assigned
/// 0, 1, ... and candidates are tried in list order, so visits arrive in
/// lexicographic order of (position in candidate list) per point. Otherwise a
/// connectivity-first order is used, which prunes earlier.
class AssignmentSearch {
 public:
  enum class Outcome { Exhausted, Stopped, BudgetHit };

  AssignmentSearch(const FiniteSpace& dom, const HyperStepTable& steps,
                   std::vector<std::vector<PointSet>> candidates, bool index_order = false);

  /// Calls `visit` on every consistent complete table until it returns
  /// false. `node_budget` caps the number of partial assignments tried.
  Outcome run(const std::function<bool(const std::vector<PointSet>&)>& visit,
              std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max());

  std::uint64_t nodes() const { return nodes_; }

  /// Swaps in new candidate lists, keeping the assignment order.
  void set_candidates(std::vector<std::vector<PointSet>> candidates) { candidates_ = std::move(candidates); }
  std::vector<std::vector<PointSet>>& candidates() { return candidates_; }

 private:
  bool recurse(std::size_t depth);

  const FiniteSpace& dom_;
  const HyperStepTable& steps_;
  std::vector<std::vector<PointSet>> candidates_;
  std::vector<int> order_;
  // For each position in order_, the earlier positions' points that are
  // related to it, split by direction.
  std::vector<std::vector<int>> below_;  // y assigned, y <= x: step(v(y), v(x))
  std::vector<std::vector<int>> above_;  // y assigned, x <= y: step(v(x), v(y))
  std::vector<PointSet> current_;
  const std::function<bool(const std::vector<PointSet>&)>* visit_ = nullptr;
  std::uint64_t nodes_ = 0;
  std::uint64_t budget_ = 0;
  Outcome outcome_ = Outcome::Exhausted;
};

}  // namespace mvtop
