#include "mvtop/assignment_search.hpp"

#include <numeric>

namespace mvtop {

AssignmentSearch::AssignmentSearch(const FiniteSpace& dom, const HyperStepTable& steps,
                                   std::vector<std::vector<PointSet>> candidates, bool index_order)
    : dom_(dom), steps_(steps), candidates_(std::move(candidates)) {
  const int n = dom_.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0);
  if (!index_order && n > 0) {
    // Greedy: next point has the most relations to already ordered points,
    // ties broken by fewer candidates, then index.
    std::vector<int> ordered;
    std::vector<bool> used(n, false);
    for (int step = 0; step < n; ++step) {
      int best = -1;
      long best_links = -1;
      std::size_t best_cands = 0;
      for (int x = 0; x < n; ++x) {
        if (used[x]) continue;
        long links = 0;
        for (int y : ordered)
          if (dom_.leq(x, y) || dom_.leq(y, x)) ++links;
        std::size_t cands = candidates_[x].size();
        if (links > best_links || (links == best_links && cands < best_cands)) {
          best = x;
          best_links = links;
          best_cands = cands;
        }
      }
      used[best] = true;
      ordered.push_back(best);
    }
    order_ = std::move(ordered);
  }
  below_.resize(n);
  above_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int x = order_[i];
    for (int j = 0; j < i; ++j) {
      const int y = order_[j];
      if (dom_.leq(y, x)) below_[i].push_back(y);
      if (dom_.leq(x, y)) above_[i].push_back(y);
    }
  }
}

AssignmentSearch::Outcome AssignmentSearch::run(const std::function<bool(const std::vector<PointSet>&)>& visit,
                                                std::uint64_t node_budget) {
  visit_ = &visit;
  nodes_ = 0;
  budget_ = node_budget;
  outcome_ = Outcome::Exhausted;
  current_.assign(dom_.size(), PointSet{});
  for (const auto& c : candidates_)
    if (c.empty()) return outcome_;
  recurse(0);
  return outcome_;
}

bool AssignmentSearch::recurse(std::size_t depth) {
  if (depth == order_.size()) {
    if (!(*visit_)(current_)) {
      outcome_ = Outcome::Stopped;
      return false;
    }
    return true;
  }
  const int x = order_[depth];
  for (PointSet v : candidates_[x]) {
    if (++nodes_ > budget_) {
      outcome_ = Outcome::BudgetHit;
      return false;
    }
    bool ok = true;
    for (int y : below_[depth])
      if (!steps_.step(current_[y], v)) {
        ok = false;
        break;
      }
    if (ok)
      for (int y : above_[depth])
        if (!steps_.step(v, current_[y])) {
          ok = false;
          break;
        }
    if (!ok) continue;
    current_[x] = v;
    if (!recurse(depth + 1)) return false;
  }
  current_[x] = PointSet{};
  return true;
}

}  // namespace mvtop
