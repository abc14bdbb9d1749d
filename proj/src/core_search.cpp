#include "core_search.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "mvtop/hyperspace.hpp"

namespace mvtop::detail {
namespace {

using Row = std::vector<std::uint64_t>;

bool test(const Row& r, int i) { return (r[i >> 6] >> (i & 63)) & 1; }
void set(Row& r, int i) { r[i >> 6] |= std::uint64_t{1} << (i & 63); }
void clear(Row& r, int i) { r[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

template <class F>
void for_each_bit(const Row& r, F&& f) {
  for (std::size_t w = 0; w < r.size(); ++w)
    for (std::uint64_t bits = r[w]; bits; bits &= bits - 1) f(static_cast<int>(w * 64 + std::countr_zero(bits)));
}

Row meet(const Row& a, const Row& b) {
  Row out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) out[w] = a[w] & b[w];
  return out;
}

bool is_singleton_row(const Row& r, int i) {
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t expect = (static_cast<int>(w) == (i >> 6)) ? std::uint64_t{1} << (i & 63) : 0;
    if (r[w] != expect) return false;
  }
  return true;
}

// Unique maximal (or minimal, via `rel`) element of `set`, or -1.
int unique_extreme(const Row& set, const std::vector<Row>& rel) {
  int found = -1;
  bool many = false;
  for_each_bit(set, [&](int q) {
    if (many) return;
    if (is_singleton_row(meet(rel[q], set), q)) {
      if (found >= 0) many = true;
      found = q;
    }
  });
  return many ? -1 : found;
}

}  // namespace

CoreRetraction core_retraction(const std::vector<Row>& up, const std::vector<bool>& alive) {
  const int n = static_cast<int>(up.size());
  const std::size_t words = n == 0 ? 0 : up[0].size();
  std::vector<Row> down(n, Row(words, 0));
  for (int p = 0; p < n; ++p)
    if (alive[p]) for_each_bit(up[p], [&](int q) { set(down[q], p); });

  CoreRetraction cr;
  cr.rep.assign(n, -1);
  Row live(words, 0);
  for (int p = 0; p < n; ++p) {
    if (!alive[p]) continue;
    int r = p;
    for_each_bit(meet(up[p], down[p]), [&](int q) { r = std::min(r, q); });
    cr.rep[p] = r;
    if (r == p) set(live, p);
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (int p = 0; p < n; ++p) {
      if (!test(live, p)) continue;
      Row below = meet(down[p], live);
      clear(below, p);
      int target = unique_extreme(below, up);
      if (target < 0) {
        Row above = meet(up[p], live);
        clear(above, p);
        target = unique_extreme(above, down);
      }
      if (target < 0) continue;
      clear(live, p);
      cr.removed.emplace_back(p, target);
      changed = true;
    }
  }

  // Resolve each removed point's final image once, newest removal first.
  std::vector<int> image(n, -1);
  for_each_bit(live, [&](int p) {
    image[p] = p;
    cr.core.push_back(p);
  });
  for (auto it = cr.removed.rbegin(); it != cr.removed.rend(); ++it) image[it->first] = image[it->second];
  cr.retract.assign(n, -1);
  for (int p = 0; p < n; ++p)
    if (alive[p]) cr.retract[p] = image[cr.rep[p]];
  return cr;
}

namespace {

using Values = std::vector<PointSet>;

// Hyperspace of a codomain with its core, shared between searches.
struct CodomainCore {
  HyperStepTable table;
  CoreRetraction core;
  std::vector<std::vector<PointSet>> comparable;  // by mask, core elements only, canonical

  explicit CodomainCore(const FiniteSpace& y) : table(y) {
    const std::size_t n = std::size_t{1} << y.size();
    const std::size_t words = (n + 63) / 64;
    std::vector<Row> up(n, Row(words, 0));
    std::vector<bool> alive(n, false);
    for (PointSet s : table.values()) {
      alive[s.bits()] = true;
      for (PointSet t : table.successors(s)) set(up[s.bits()], static_cast<int>(t.bits()));
    }
    core = core_retraction(up, alive);
    std::vector<PointSet> members;
    for (int c : core.core) members.push_back(PointSet(static_cast<std::uint32_t>(c)));
    std::sort(members.begin(), members.end(), CanonicalLess{});
    comparable.resize(n);
    for (PointSet s : members)
      for (PointSet t : members)
        if (s != t && (table.step(s, t) || table.step(t, s))) comparable[s.bits()].push_back(t);
  }
};

std::shared_ptr<const CodomainCore> codomain_core(const FiniteSpace& y) {
  static std::mutex mu;
  static std::map<std::vector<std::uint32_t>, std::shared_ptr<const CodomainCore>> cache;
  std::vector<std::uint32_t> key;
  for (PointSet u : y.min_opens()) key.push_back(u.bits());
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const CodomainCore>(y);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(built)).first->second;
}

bool canonical_less_values(const Values& a, const Values& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return canonical_less(a[i], b[i]);
  return false;
}

void push_distinct(std::vector<Values>& chain, Values v) {
  if (chain.empty() || chain.back() != v) chain.push_back(std::move(v));
}

// f, then f . h_i for the domain retraction stages, then k_i . (f . j . r)
// for the hyperspace stages. Ends at the lift of the reduced map.
std::vector<Values> retraction_chain(const Values& f, const CoreRetraction& dom, const CoreRetraction& cod) {
  std::vector<Values> chain{f};
  const int n = static_cast<int>(f.size());
  std::vector<int> h(dom.rep.begin(), dom.rep.end());
  auto compose = [&] {
    Values v(n);
    for (int x = 0; x < n; ++x) v[x] = f[h[x]];
    return v;
  };
  push_distinct(chain, compose());
  for (auto [p, t] : dom.removed) {
    bool moved = false;
    for (int& x : h)
      if (x == p) x = t, moved = true;
    if (moved) push_distinct(chain, compose());
  }
  Values v = chain.back();
  for (auto& s : v) s = PointSet(static_cast<std::uint32_t>(cod.rep[s.bits()]));
  push_distinct(chain, v);
  for (auto [p, t] : cod.removed) {
    bool moved = false;
    for (auto& s : v)
      if (s.bits() == static_cast<std::uint32_t>(p)) s = PointSet(static_cast<std::uint32_t>(t)), moved = true;
    if (moved) push_distinct(chain, v);
  }
  return chain;
}

}  // namespace

HomotopyVerdict core_homotopy(const MultiMap& f, const MultiMap* g, const SearchOptions& options) {
  const FiniteSpace& x = *f.dom();
  const FiniteSpace& y = *f.cod();
  auto cc = codomain_core(y);
  const HyperStepTable& table = cc->table;

  const int n = x.size();
  std::vector<Row> up(n, Row(1, 0));
  for (int p = 0; p < n; ++p) up[p][0] = x.min_open(p).bits();
  CoreRetraction dom = core_retraction(up, std::vector<bool>(n, true));
  const std::vector<int>& cx = dom.core;
  const int m = static_cast<int>(cx.size());
  std::vector<int> position(n, -1);
  for (int i = 0; i < m; ++i) position[cx[i]] = i;
  std::vector<std::vector<int>> above(m), below(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && x.leq(cx[i], cx[j])) above[i].push_back(j), below[j].push_back(i);

  auto reduce = [&](const Values& v) {
    Values r(m);
    for (int i = 0; i < m; ++i) r[i] = PointSet(static_cast<std::uint32_t>(cc->core.retract[v[cx[i]].bits()]));
    return r;
  };
  auto lift = [&](const Values& r) {
    Values v(n);
    for (int p = 0; p < n; ++p) v[p] = r[position[dom.retract[p]]];
    return v;
  };

  std::vector<bool> constant_ok(std::size_t{1} << y.size(), !options.singleton_constants);
  if (options.singleton_constants)
    for (int q = 0; q < y.size(); ++q) constant_ok[cc->core.retract[std::size_t{1} << q]] = true;
  auto neighbours = [&](const Values& cur) {
    std::vector<Values> found;
    for (int i = 0; i < m; ++i) {
      for (PointSet v : cc->comparable[cur[i].bits()]) {
        bool ok = true;
        for (int j : above[i])
          if (!table.step(v, cur[j])) { ok = false; break; }
        if (ok)
          for (int j : below[i])
            if (!table.step(cur[j], v)) { ok = false; break; }
        if (!ok) continue;
        Values next = cur;
        next[i] = v;
        found.push_back(std::move(next));
      }
    }
    std::sort(found.begin(), found.end(), canonical_less_values);
    return found;
  };
  auto key = [](const Values& v) {
    std::string k;
    for (PointSet s : v) k.push_back(static_cast<char>(s.bits() & 0xff)), k.push_back(static_cast<char>(s.bits() >> 8));
    return k;
  };

  // Two breadth-first trees, one grown from f and one from the targets. A
  // component is exhausted as soon as either tree stops growing, which
  // settles NotHomotopic without walking the (possibly huge) other side.
  struct Side {
    std::vector<Values> values;
    std::vector<int> parent;
    std::unordered_map<std::string, int> index;
    std::size_t head = 0;
    int add(Values v, int from, const std::string& k) {
      auto [it, inserted] = index.emplace(k, static_cast<int>(values.size()));
      if (!inserted) return -1;
      values.push_back(std::move(v));
      parent.push_back(from);
      return it->second;
    }
  };
  Side sides[2];
  {
    const Values start = reduce(f.values());
    sides[0].add(start, -1, key(start));
    if (g) {
      Values goal = reduce(g->values());
      sides[1].add(goal, -1, key(goal));
    } else {
      std::vector<PointSet> consts;
      for (int c : cc->core.core)
        if (constant_ok[c]) consts.push_back(PointSet(static_cast<std::uint32_t>(c)));
      std::sort(consts.begin(), consts.end(), CanonicalLess{});
      for (PointSet c : consts) {
        Values v(m, c);
        sides[1].add(v, -1, key(v));
      }
    }
  }

  HomotopyVerdict verdict;
  int meet[2] = {-1, -1};
  if (auto it = sides[1].index.find(key(sides[0].values[0])); it != sides[1].index.end()) meet[0] = 0, meet[1] = it->second;
  while (meet[0] < 0) {
    const int s = sides[0].values.size() - sides[0].head <= sides[1].values.size() - sides[1].head ? 0 : 1;
    Side& side = sides[s];
    if (side.head == side.values.size() || sides[1 - s].head == sides[1 - s].values.size()) break;
    const int parent = static_cast<int>(side.head++);
    for (auto& next : neighbours(side.values[parent])) {
      const std::string k = key(next);
      const int id = side.add(std::move(next), parent, k);
      if (id < 0) continue;
      if (sides[0].values.size() + sides[1].values.size() > options.budget) {
        verdict.status = HomotopyStatus::Unknown;
        verdict.budget_hit = true;
        verdict.explored = options.budget;
        return verdict;
      }
      if (auto it = sides[1 - s].index.find(k); it != sides[1 - s].index.end()) {
        meet[s] = id;
        meet[1 - s] = it->second;
        break;
      }
    }
  }
  verdict.explored = sides[0].values.size() + sides[1].values.size();
  if (meet[0] < 0) {
    verdict.status = HomotopyStatus::NotHomotopic;
    return verdict;
  }

  std::vector<Values> path;
  for (int cur = meet[0]; cur >= 0; cur = sides[0].parent[cur]) path.push_back(sides[0].values[cur]);
  std::reverse(path.begin(), path.end());
  for (int cur = sides[1].parent[meet[1]]; cur >= 0; cur = sides[1].parent[cur]) path.push_back(sides[1].values[cur]);
  std::vector<Values> chain = retraction_chain(f.values(), dom, cc->core);
  for (const auto& r : path) push_distinct(chain, lift(r));
  if (g) {
    auto back = retraction_chain(g->values(), dom, cc->core);
    for (auto it = back.rbegin(); it != back.rend(); ++it) push_distinct(chain, *it);
  }
  std::vector<MultiMap> maps;
  for (auto& v : chain) maps.emplace_back(f.dom(), f.cod(), std::move(v));
  verdict.status = HomotopyStatus::Homotopic;
  verdict.certificate = fence_shaped(std::move(maps));
  return verdict;
}

}  // namespace mvtop::detail
