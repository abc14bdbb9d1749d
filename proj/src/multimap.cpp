#include "mvtop/multimap.hpp"

#include "mvtop/hyperspace.hpp"

namespace mvtop {

MultiMap::MultiMap(SpacePtr dom, SpacePtr cod, std::vector<PointSet> values)
    : dom_(std::move(dom)), cod_(std::move(cod)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != dom_->size())
    throw Error(ErrorKind::Schema, "value table has " + std::to_string(values_.size()) + " entries for " +
                                       std::to_string(dom_->size()) + " domain points");
  for (int x = 0; x < dom_->size(); ++x) {
    if (values_[x].empty()) throw Error(ErrorKind::EmptyValue, "value of " + dom_->label(x) + " is empty");
    if (!values_[x].within(cod_->size()))
      throw Error(ErrorKind::UnknownLabel, "value of " + dom_->label(x) + " leaves the codomain");
  }
}

PointSet MultiMap::range() const {
  PointSet out;
  for (PointSet v : values_) out |= v;
  return out;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || *a == *b; }

bool operator==(const MultiMap& a, const MultiMap& b) {
  return a.values_ == b.values_ && same_space(a.dom_, b.dom_) && same_space(a.cod_, b.cod_);
}

PointSet upper_inverse(const MultiMap& f, PointSet v) {
  PointSet out;
  for (int x = 0; x < f.dom()->size(); ++x)
    if (f(x).subset_of(v)) out.insert(x);
  return out;
}

PointSet lower_inverse(const MultiMap& f, PointSet v) {
  PointSet out;
  for (int x = 0; x < f.dom()->size(); ++x)
    if (f(x).intersects(v)) out.insert(x);
  return out;
}

PointSet subset_inverse(const MultiMap& f, PointSet d) {
  if (d.empty()) throw Error(ErrorKind::EmptySubset, "inverse of an m-function needs a nonempty subset");
  return upper_inverse(f, d);
}

Semicontinuity semicontinuity(const MultiMap& f) {
  Semicontinuity s{true, true, false};
  const FiniteSpace& dom = *f.dom();
  for (PointSet w : f.cod()->open_sets()) {
    if (s.usc && !dom.is_open(upper_inverse(f, w))) s.usc = false;
    if (s.lsc && !dom.is_open(lower_inverse(f, w))) s.lsc = false;
    if (!s.usc && !s.lsc) break;
  }
  s.m_continuous = s.usc && s.lsc;
  return s;
}

bool is_m_continuous(const MultiMap& f) {
  const FiniteSpace& dom = *f.dom();
  const FiniteSpace& cod = *f.cod();
  for (int x = 0; x < dom.size(); ++x)
    for (int y : dom.min_open(x))
      if (y != x && !hyper_step(cod, f(x), f(y))) return false;
  return true;
}

MultiMap compose(const MultiMap& g, const MultiMap& f) {
  if (!same_space(f.cod(), g.dom()))
    throw Error(ErrorKind::DomainMismatch, "composition needs cod(f) = dom(g)");
  std::vector<PointSet> values;
  values.reserve(f.values().size());
  for (PointSet v : f.values()) {
    PointSet image;
    for (int y : v) image |= g(y);
    values.push_back(image);
  }
  return MultiMap(f.dom(), g.cod(), std::move(values));
}

MultiMap identity_map(const SpacePtr& x) {
  std::vector<PointSet> values;
  for (int p = 0; p < x->size(); ++p) values.push_back(PointSet::singleton(p));
  return MultiMap(x, x, std::move(values));
}

MultiMap constant_map(const SpacePtr& dom, const SpacePtr& cod, PointSet value) {
  if (value.empty()) throw Error(ErrorKind::EmptyConstantValue, "m-constant map needs a nonempty value");
  return MultiMap(dom, cod, std::vector<PointSet>(dom->size(), value));
}

MultiMap inclusion_map(const SpacePtr& x, PointSet c) {
  Subspace sub = subspace(*x, c);
  std::vector<PointSet> values;
  for (int p : sub.embedding) values.push_back(PointSet::singleton(p));
  return MultiMap(share(std::move(sub.space)), x, std::move(values));
}

MultiMap projection_map(const SpacePtr& product_space, int index) {
  const auto& factors = product_space->factors();
  if (!factors) throw Error(ErrorKind::NotAProduct, "space was not built as a product");
  if (index != 1 && index != 2) throw Error(ErrorKind::BadParams, "projection index must be 1 or 2");
  const int ny = factors->right->size();
  std::vector<PointSet> values;
  for (int p = 0; p < product_space->size(); ++p)
    values.push_back(PointSet::singleton(index == 1 ? p / ny : p % ny));
  return MultiMap(product_space, index == 1 ? factors->left : factors->right, std::move(values));
}

MultiMap pairing(const MultiMap& a, const MultiMap& b, const SpacePtr& target) {
  if (!same_space(a.dom(), b.dom())) throw Error(ErrorKind::DomainMismatch, "pairing needs a shared domain");
  const auto& factors = target->factors();
  if (!factors) throw Error(ErrorKind::NotAProduct, "pairing target must be a product space");
  if (!same_space(factors->left, a.cod()) || !same_space(factors->right, b.cod()))
    throw Error(ErrorKind::DomainMismatch, "pairing target factors differ from the codomains");
  const int ny = b.cod()->size();
  std::vector<PointSet> values;
  for (int x = 0; x < a.dom()->size(); ++x) {
    PointSet v;
    for (int p : a(x))
      for (int q : b(x)) v.insert(p * ny + q);
    values.push_back(v);
  }
  return MultiMap(a.dom(), target, std::move(values));
}

Classification classify(const MultiMap& f) {
  Classification c;
  const int n = f.dom()->size();
  c.injective = true;
  PointSet seen;
  for (int x = 0; x < n && c.injective; ++x) {
    if (f(x).intersects(seen)) c.injective = false;
    seen |= f(x);
  }
  c.surjective = f.range() == f.cod()->points();
  if (c.injective && c.surjective) {
    std::vector<PointSet> inv(f.cod()->size());
    for (int x = 0; x < n; ++x)
      for (int b : f(x)) inv[b].insert(x);
    MultiMap g(f.cod(), f.dom(), std::move(inv));
    c.m_homeomorphism = is_m_continuous(f) && is_m_continuous(g);
    if (c.m_homeomorphism) c.inverse = std::move(g);
  }
  return c;
}

bool is_m_section_pair(const MultiMap& alpha, const MultiMap& beta) {
  if (!same_space(alpha.dom(), beta.cod()) || !same_space(alpha.cod(), beta.dom()))
    throw Error(ErrorKind::DomainMismatch, "section pair needs alpha: A => B and beta: B => A");
  for (int a = 0; a < alpha.dom()->size(); ++a) {
    PointSet meet = alpha.dom()->points();
    for (int b : alpha(a)) meet &= beta(b);
    if (meet != PointSet::singleton(a)) return false;
  }
  return true;
}

MultiMap restrict_map(const MultiMap& f, PointSet c) {
  if (c.empty()) throw Error(ErrorKind::EmptySubset, "restriction to an empty set");
  Subspace sub = subspace(*f.dom(), c);
  std::vector<PointSet> values;
  for (int p : sub.embedding) values.push_back(f(p));
  return MultiMap(share(std::move(sub.space)), f.cod(), std::move(values));
}

}  // namespace mvtop
