#include "mvtop/finite_space.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mvtop {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::MissingSelf: return "MissingSelf";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::EmptySubspace: return "EmptySubspace";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::EmptyValue: return "EmptyValue";
    case ErrorKind::EmptyConstantValue: return "EmptyConstantValue";
    case ErrorKind::NotAProduct: return "NotAProduct";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::EmptyPullback: return "EmptyPullback";
    case ErrorKind::NotPathConnected: return "NotPathConnected";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::Schema: return "Schema";
  }
  return "Error";
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::vector<PointSet> min_open)
    : labels_(std::move(labels)), min_open_(std::move(min_open)) {
  const int n = size();
  point_closure_.assign(n, PointSet{});
  for (int x = 0; x < n; ++x)
    for (int y : min_open_[x]) point_closure_[y].insert(x);
}

FiniteSpace FiniteSpace::from_masks(std::vector<std::string> labels, std::vector<PointSet> min_open) {
  const int n = static_cast<int>(labels.size());
  if (n > kMaxPoints) throw Error(ErrorKind::SizeLimit, std::to_string(n) + " points exceeds " + std::to_string(kMaxPoints));
  if (static_cast<int>(min_open.size()) != n)
    throw Error(ErrorKind::Schema, "neighbourhood table has " + std::to_string(min_open.size()) + " rows for " +
                                       std::to_string(n) + " points");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateLabel, l);
  for (int x = 0; x < n; ++x) {
    if (!min_open[x].within(n))
      throw Error(ErrorKind::UnknownLabel, "neighbourhood of " + labels[x] + " references an undeclared point");
  }
  for (int x = 0; x < n; ++x)
    if (!min_open[x].contains(x)) throw Error(ErrorKind::MissingSelf, labels[x]);
  for (int x = 0; x < n; ++x) {
    for (int y : min_open[x]) {
      if (!min_open[y].subset_of(min_open[x]))
        throw Error(ErrorKind::NotTransitive, labels[y] + " in U_" + labels[x] + " but U_" + labels[y] +
                                                  " is not contained in U_" + labels[x]);
    }
  }
  return FiniteSpace(std::move(labels), std::move(min_open));
}

FiniteSpace FiniteSpace::validate(std::vector<std::string> labels,
                                  const std::vector<std::vector<std::string>>& neighbourhoods) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateLabel, l);
  if (labels.size() > static_cast<std::size_t>(kMaxPoints))
    throw Error(ErrorKind::SizeLimit, std::to_string(labels.size()) + " points");
  std::vector<PointSet> masks;
  masks.reserve(neighbourhoods.size());
  for (std::size_t x = 0; x < neighbourhoods.size(); ++x) {
    PointSet u;
    for (const auto& name : neighbourhoods[x]) {
      auto it = std::find(labels.begin(), labels.end(), name);
      if (it == labels.end())
        throw Error(ErrorKind::UnknownLabel, name + " (in neighbourhood of " +
                                                 (x < labels.size() ? labels[x] : std::to_string(x)) + ")");
      u.insert(static_cast<int>(it - labels.begin()));
    }
    masks.push_back(u);
  }
  return from_masks(std::move(labels), std::move(masks));
}

std::optional<int> FiniteSpace::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int FiniteSpace::index_of(const std::string& label) const {
  auto i = find(label);
  if (!i) throw Error(ErrorKind::UnknownLabel, label);
  return *i;
}

PointSet FiniteSpace::open_hull(PointSet a) const {
  PointSet out;
  for (int x : a) out |= min_open_[x];
  return out;
}

bool FiniteSpace::is_open(PointSet a) const { return open_hull(a) == a; }

PointSet FiniteSpace::closure(PointSet a) const {
  PointSet out;
  for (int y = 0; y < size(); ++y)
    if (min_open_[y].intersects(a)) out.insert(y);
  return out;
}

std::vector<PointSet> FiniteSpace::open_sets() const {
  const int n = size();
  if (n > kMaxEnumerablePoints)
    throw Error(ErrorKind::SizeLimit, "open-set enumeration refuses " + std::to_string(n) + " points (limit " +
                                          std::to_string(kMaxEnumerablePoints) + ")");
  std::vector<PointSet> out;
  // DFS over points: taking x forces U_x in, leaving x out forces its
  // closure out.
  std::function<void(int, PointSet, PointSet)> dfs = [&](int x, PointSet in, PointSet out_forced) {
    while (x < n && (in.contains(x) || out_forced.contains(x))) ++x;
    if (x == n) {
      out.push_back(in);
      return;
    }
    dfs(x + 1, in, out_forced | point_closure_[x]);
    dfs(x + 1, in | min_open_[x], out_forced);
  };
  dfs(0, PointSet{}, PointSet{});
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

std::vector<PointSet> FiniteSpace::closed_sets() const {
  std::vector<PointSet> out;
  for (PointSet o : open_sets()) out.push_back(o.complement(size()));
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

bool FiniteSpace::is_t0() const {
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y)
      if (leq(x, y) && leq(y, x)) return false;
  return true;
}

FiniteSpace product(const SpacePtr& x, const SpacePtr& y) {
  const int nx = x->size();
  const int ny = y->size();
  if (nx * ny > kMaxPoints)
    throw Error(ErrorKind::SizeLimit, "product would have " + std::to_string(nx * ny) + " points");
  std::vector<std::string> labels;
  std::vector<PointSet> min_open;
  labels.reserve(nx * ny);
  for (int a = 0; a < nx; ++a) {
    for (int b = 0; b < ny; ++b) {
      labels.push_back(x->label(a) + "," + y->label(b));
      PointSet u;
      for (int c : x->min_open(a))
        for (int d : y->min_open(b)) u.insert(c * ny + d);
      min_open.push_back(u);
    }
  }
  FiniteSpace out(std::move(labels), std::move(min_open));
  out.factors_ = ProductFactors{x, y};
  return out;
}

Subspace subspace(const FiniteSpace& x, PointSet c) {
  if (c.empty()) throw Error(ErrorKind::EmptySubspace, "subspace of an empty point set");
  if (!c.within(x.size())) throw Error(ErrorKind::UnknownLabel, "subspace set " + to_string(c) + " out of range");
  std::vector<int> embedding = c.members();
  std::vector<int> inverse(x.size(), -1);
  for (std::size_t i = 0; i < embedding.size(); ++i) inverse[embedding[i]] = static_cast<int>(i);
  std::vector<std::string> labels;
  std::vector<PointSet> min_open;
  for (int p : embedding) {
    labels.push_back(x.label(p));
    PointSet u;
    for (int q : x.min_open(p) & c) u.insert(inverse[q]);
    min_open.push_back(u);
  }
  return Subspace{FiniteSpace::from_masks(std::move(labels), std::move(min_open)), std::move(embedding)};
}

bool is_isomorphism(const FiniteSpace& a, const FiniteSpace& b, const std::vector<int>& perm) {
  if (a.size() != b.size() || static_cast<int>(perm.size()) != a.size()) return false;
  for (int x = 0; x < a.size(); ++x) {
    PointSet mapped;
    for (int y : a.min_open(x)) mapped.insert(perm[y]);
    if (mapped != b.min_open(perm[x])) return false;
  }
  return true;
}

}  // namespace mvtop
