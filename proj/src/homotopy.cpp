#include "mvtop/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>

#include "core_search.hpp"
#include "mvtop/assignment_search.hpp"
#include "mvtop/hyperspace.hpp"
#include "mvtop/models.hpp"

namespace mvtop {

std::string_view to_string(HomotopyStatus status) {
  switch (status) {
    case HomotopyStatus::Homotopic: return "Homotopic";
    case HomotopyStatus::NotHomotopic: return "NotHomotopic";
    case HomotopyStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(StepMode mode) {
  switch (mode) {
    case StepMode::Comparable: return "comparable";
    case StepMode::SingleClass: return "single-class";
    case StepMode::Core: return "core";
  }
  return "comparable";
}

namespace {

using Values = std::vector<PointSet>;

void require_compatible(const MultiMap& f, const MultiMap& g) {
  if (!same_space(f.dom(), g.dom()) || !same_space(f.cod(), g.cod()))
    throw Error(ErrorKind::DomainMismatch, "maps must share domain and codomain");
}

void require_continuous(const MultiMap& f, const char* name) {
  if (!is_m_continuous(f)) throw Error(ErrorKind::NotContinuous, std::string(name) + " is not m-continuous");
}

bool canonical_less_values(const Values& a, const Values& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return canonical_less(a[i], b[i]);
  }
  return false;
}

// Breadth-first search over m-continuous maps dom => cod.
//
// Nodes are appended to `nodes_` in discovery order, which is also the
// expansion order, and neighbours are merged in canonical map order. The
// first path found is therefore the lexicographically smallest among the
// shortest ones, independent of how neighbour generation is parallelised.
class MapSearch {
 public:
  MapSearch(const MultiMap& start, const SearchOptions& options)
      : dom_(start.dom()), cod_(start.cod()), table_(*cod_), options_(options), start_(start.values()) {
    const int n = dom_->size();
    up_nb_.resize(n);
    down_nb_.resize(n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        if (dom_->leq(x, y)) up_nb_[x].push_back(y);
        if (dom_->leq(y, x)) down_nb_[x].push_back(y);
      }
    std::vector<bool> seen(n, false);
    for (int x = 0; x < n; ++x) {
      if (seen[x]) continue;
      std::vector<int> cls;
      for (int y = x; y < n; ++y)
        if (dom_->leq(x, y) && dom_->leq(y, x)) {
          cls.push_back(y);
          seen[y] = true;
        }
      classes_.push_back(std::move(cls));
    }
  }

  // `direct` lists every target explicitly (canonical order) when that is
  // cheap; a node adjacent to one of them then finishes without
  // enumerating its other neighbours. The outcome is the one the plain
  // expansion would reach, because targets are checked in the same order.
  HomotopyVerdict run(const std::function<bool(const Values&)>& is_target, const std::vector<Values>& direct = {}) {
    HomotopyVerdict verdict;
    const bool comparable = options_.mode == StepMode::Comparable;
    if (is_target(start_)) {
      verdict.status = HomotopyStatus::Homotopic;
      verdict.explored = 1;
      verdict.certificate.push_back(to_map(start_));
      return verdict;
    }
    if (comparable) {
      add_node(State{start_, kUp, kUp}, -1, 0);
      add_node(State{start_, kDown, kDown}, -1, 0);
    } else {
      add_node(State{start_, kUp, kUp}, -1, 0);
    }

    const int threads = std::max(1, options_.threads);
    std::size_t head = 0;
    while (head < nodes_.size()) {
      // Expand a batch of consecutive nodes; neighbour lists are pure
      // functions of their node, merged below in node order.
      const std::size_t batch_end = std::min(nodes_.size(), head + static_cast<std::size_t>(64 * threads));
      if (comparable && !direct.empty()) {
        for (std::size_t i = head; i < batch_end; ++i) {
          if (auto t = adjacent_target(nodes_[i], direct)) {
            int id = add_node(std::move(*t), static_cast<int>(i), nodes_[i].depth + 1);
            verdict.status = HomotopyStatus::Homotopic;
            verdict.explored = nodes_.size();
            verdict.certificate = path_to(id);
            return verdict;
          }
        }
      }
      std::vector<std::vector<State>> batch(batch_end - head);
      std::vector<bool> overflow(batch.size(), false);
      auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) overflow[i] = !neighbours(head + i, batch[i]);
      };
      if (threads == 1 || batch.size() < 2) {
        work(0, batch.size());
      } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (batch.size() + threads - 1) / threads;
        for (std::size_t lo = 0; lo < batch.size(); lo += chunk)
          pool.emplace_back(work, lo, std::min(batch.size(), lo + chunk));
        for (auto& t : pool) t.join();
      }
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const int parent = static_cast<int>(head + i);
        if (overflow[i]) return budget_hit(verdict);
        for (auto& next : batch[i]) {
          int id = add_node(std::move(next), parent, nodes_[parent].depth + 1);
          if (id < 0) continue;
          if (nodes_.size() > options_.budget) return budget_hit(verdict);
          const Node& node = nodes_[id];
          if (is_target(node.state.values) && accepts(node.state)) {
            verdict.status = HomotopyStatus::Homotopic;
            verdict.explored = nodes_.size();
            verdict.certificate = path_to(id);
            return verdict;
          }
        }
      }
      head = batch_end;
    }
    verdict.status = HomotopyStatus::NotHomotopic;
    verdict.explored = nodes_.size();
    return verdict;
  }

  MultiMap to_map(const Values& v) const { return MultiMap(dom_, cod_, v); }

 private:
  static constexpr char kUp = 0;
  static constexpr char kDown = 1;

  struct State {
    Values values;
    char next = kUp;   // direction of the next step (Comparable mode)
    char first = kUp;  // direction of the first step
  };
  struct Node {
    State state;
    int parent;
    int depth;
  };

  std::string key(const State& s) const {
    std::string k;
    k.reserve(s.values.size() * 2 + 2);
    for (PointSet v : s.values) {
      k.push_back(static_cast<char>(v.bits() & 0xff));
      k.push_back(static_cast<char>((v.bits() >> 8) & 0xff));
    }
    if (options_.mode == StepMode::Comparable) {
      k.push_back(s.next);
      k.push_back(s.first);
    }
    return k;
  }

  int add_node(State s, int parent, int depth) {
    std::string k = key(s);
    auto [it, inserted] = index_.emplace(std::move(k), static_cast<int>(nodes_.size()));
    if (!inserted) return -1;
    nodes_.push_back(Node{std::move(s), parent, depth});
    return it->second;
  }

  std::optional<State> adjacent_target(const Node& node, const std::vector<Values>& direct) const {
    const Values& f = node.state.values;
    const bool up = node.state.next == kUp;
    const bool allow_stay = node.depth == 0 && node.state.first == kUp && up;
    for (const Values& t : direct) {
      if (t == f && !allow_stay) continue;
      bool ok = true;
      for (std::size_t x = 0; x < f.size() && ok; ++x) ok = up ? table_.step(f[x], t[x]) : table_.step(t[x], f[x]);
      if (!ok) continue;
      State s{t, up ? kDown : kUp, node.state.first};
      if (index_.count(key(s)) || !accepts(s)) continue;
      return s;
    }
    return std::nullopt;
  }

  // A fence certificate must start with an up-step or end with a down-step.
  bool accepts(const State& s) const {
    if (options_.mode != StepMode::Comparable) return true;
    return s.first == kUp || s.next == kUp;
  }

  HomotopyVerdict& budget_hit(HomotopyVerdict& v) const {
    v.status = HomotopyStatus::Unknown;
    v.budget_hit = true;
    v.explored = std::min<std::uint64_t>(nodes_.size(), options_.budget);
    return v;
  }

  std::vector<MultiMap> path_to(int id) const {
    std::vector<MultiMap> chain;
    std::vector<const Values*> seq;
    for (int cur = id; cur >= 0; cur = nodes_[cur].parent) seq.push_back(&nodes_[cur].state.values);
    std::reverse(seq.begin(), seq.end());
    for (const Values* v : seq) chain.push_back(to_map(*v));
    if (options_.mode == StepMode::SingleClass) return fence_shaped(std::move(chain));
    return chain;
  }

  // Fills `out` with the neighbours of node `id` in canonical order.
  // Returns false when the neighbour count alone exceeds the budget.
  bool neighbours(std::size_t id, std::vector<State>& out) const {
    const Node& node = nodes_[id];
    if (options_.mode == StepMode::Comparable) return comparable_neighbours(node, out);
    single_class_neighbours(node, out);
    return true;
  }

  bool comparable_neighbours(const Node& node, std::vector<State>& out) const {
    const Values& f = node.state.values;
    const bool up = node.state.next == kUp;
    std::vector<std::vector<PointSet>> cands(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) cands[x] = up ? table_.successors(f[x]) : table_.predecessors(f[x]);
    AssignmentSearch search(*dom_, table_, std::move(cands));
    std::vector<Values> found;
    const std::uint64_t cap = options_.budget + 1;
    bool ok = true;
    // The stay move f -> f only exists to flip the parity of the up-start
    // seed, which lets a chain begin with a down-step.
    const bool allow_stay = node.depth == 0 && node.state.first == kUp && up;
    search.run([&](const Values& g) {
      if (g == f && !allow_stay) return true;
      found.push_back(g);
      if (found.size() > cap) {
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) return false;
    std::sort(found.begin(), found.end(), canonical_less_values);
    const char next = up ? kDown : kUp;
    for (auto& g : found) out.push_back(State{std::move(g), next, node.state.first});
    return true;
  }

  void single_class_neighbours(const Node& node, std::vector<State>& out) const {
    const Values& f = node.state.values;
    std::vector<Values> found;
    for (const auto& cls : classes_) {
      for (int dir = 0; dir < 2; ++dir) {
        // Candidate values per class member, filtered against the fixed
        // points outside the class.
        std::vector<std::vector<PointSet>> cands;
        bool empty = false;
        for (int x : cls) {
          const auto& base = dir == 0 ? table_.successors(f[x]) : table_.predecessors(f[x]);
          std::vector<PointSet> keep;
          for (PointSet v : base) {
            bool ok = true;
            for (int y : up_nb_[x]) {
              if (std::find(cls.begin(), cls.end(), y) != cls.end()) continue;
              if (!table_.step(v, f[y])) {
                ok = false;
                break;
              }
            }
            if (ok)
              for (int y : down_nb_[x]) {
                if (std::find(cls.begin(), cls.end(), y) != cls.end()) continue;
                if (!table_.step(f[y], v)) {
                  ok = false;
                  break;
                }
              }
            if (ok) keep.push_back(v);
          }
          if (keep.empty()) empty = true;
          cands.push_back(std::move(keep));
        }
        if (empty) continue;
        // Odometer over the class; members are mutually related so every
        // pair must step both ways.
        std::vector<std::size_t> pos(cls.size(), 0);
        while (true) {
          bool ok = true;
          for (std::size_t i = 0; i < cls.size() && ok; ++i)
            for (std::size_t j = 0; j < cls.size() && ok; ++j)
              if (i != j && !table_.step(cands[i][pos[i]], cands[j][pos[j]])) ok = false;
          if (ok) {
            Values g = f;
            for (std::size_t i = 0; i < cls.size(); ++i) g[cls[i]] = cands[i][pos[i]];
            if (g != f) found.push_back(std::move(g));
          }
          std::size_t i = 0;
          while (i < cls.size() && ++pos[i] == cands[i].size()) pos[i++] = 0;
          if (i == cls.size()) break;
        }
      }
    }
    std::sort(found.begin(), found.end(), canonical_less_values);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (auto& g : found) out.push_back(State{std::move(g), kUp, kUp});
  }

  SpacePtr dom_;
  SpacePtr cod_;
  HyperStepTable table_;
  SearchOptions options_;
  Values start_;
  std::vector<std::vector<int>> up_nb_;
  std::vector<std::vector<int>> down_nb_;
  std::vector<std::vector<int>> classes_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, int> index_;
};

bool is_constant(const Values& v) {
  for (PointSet s : v)
    if (s != v.front()) return false;
  return true;
}

}  // namespace

bool one_step(const MultiMap& f, const MultiMap& g) {
  require_compatible(f, g);
  require_continuous(f, "f");
  require_continuous(g, "g");
  for (int x = 0; x < f.dom()->size(); ++x)
    if (!hyper_step(*f.cod(), f(x), g(x))) return false;
  return true;
}

bool direct_step_oracle(const MultiMap& f, const MultiMap& g) {
  require_compatible(f, g);
  require_continuous(f, "f");
  require_continuous(g, "g");
  SpacePtr sierpinski = share(models::sierpinski());
  SpacePtr cylinder = share(product(f.dom(), sierpinski));
  std::vector<PointSet> values(cylinder->size());
  for (int x = 0; x < f.dom()->size(); ++x) {
    values[x * 2 + 0] = f(x);
    values[x * 2 + 1] = g(x);
  }
  return semicontinuity(MultiMap(cylinder, f.cod(), std::move(values))).m_continuous;
}

HomotopyVerdict are_m_homotopic(const MultiMap& f, const MultiMap& g, const SearchOptions& options) {
  require_compatible(f, g);
  require_continuous(f, "f");
  require_continuous(g, "g");
  if (options.mode == StepMode::Core) return detail::core_homotopy(f, &g, options);
  MapSearch search(f, options);
  const Values& target = g.values();
  return search.run([&](const Values& v) { return v == target; }, {target});
}

HomotopyVerdict is_null_m_homotopic(const MultiMap& f, const SearchOptions& options) {
  require_continuous(f, "f");
  if (options.mode == StepMode::Core) return detail::core_homotopy(f, nullptr, options);
  MapSearch search(f, options);
  const bool singletons = options.singleton_constants;
  std::vector<Values> constants;
  for (PointSet s : subsets_of(f.cod()->points()))
    if (!singletons || s.size() == 1) constants.emplace_back(f.dom()->size(), s);
  return search.run([&](const Values& v) { return is_constant(v) && (!singletons || v.front().size() == 1); },
                    constants);
}

HomotopyVerdict is_m_contractible(const SpacePtr& x, const SearchOptions& options) {
  return is_null_m_homotopic(identity_map(x), options);
}

namespace {

// Component label of every nonempty subset in the undirected hyper-step
// graph, indexed by mask.
std::vector<int> hyperspace_components(const FiniteSpace& x) {
  HyperStepTable table(x);
  std::vector<int> comp(std::size_t{1} << x.size(), -1);
  int next = 0;
  for (PointSet s : table.values()) {
    if (comp[s.bits()] >= 0) continue;
    std::deque<PointSet> queue{s};
    comp[s.bits()] = next;
    while (!queue.empty()) {
      PointSet cur = queue.front();
      queue.pop_front();
      for (const auto* list : {&table.successors(cur), &table.predecessors(cur)})
        for (PointSet t : *list)
          if (comp[t.bits()] < 0) {
            comp[t.bits()] = next;
            queue.push_back(t);
          }
    }
    ++next;
  }
  return comp;
}

}  // namespace

bool m_path_exists(const FiniteSpace& x, PointSet a0, PointSet a1) {
  if (a0.empty() || a1.empty()) throw Error(ErrorKind::EmptySubset, "m-path endpoints must be nonempty");
  if (a0 == a1) return true;
  auto comp = hyperspace_components(x);
  return comp[a0.bits()] == comp[a1.bits()];
}

std::optional<std::pair<PointSet, PointSet>> disconnected_closed_pair(const FiniteSpace& x) {
  auto comp = hyperspace_components(x);
  std::vector<PointSet> closed;
  for (PointSet c : x.closed_sets())
    if (!c.empty()) closed.push_back(c);
  for (PointSet a : closed)
    for (PointSet b : closed)
      if (comp[a.bits()] != comp[b.bits()]) return std::make_pair(a, b);
  return std::nullopt;
}

bool is_m_pathwise_connected(const FiniteSpace& x) { return !disconnected_closed_pair(x).has_value(); }

bool is_valid_certificate(const std::vector<MultiMap>& certificate, const MultiMap& f,
                          const std::optional<MultiMap>& g) {
  if (certificate.empty()) return false;
  if (!(certificate.front() == f)) return false;
  if (g) {
    if (!(certificate.back() == *g)) return false;
  } else if (!is_constant(certificate.back().values())) {
    return false;
  }
  for (const auto& m : certificate)
    if (!same_space(m.dom(), f.dom()) || !same_space(m.cod(), f.cod()) || !is_m_continuous(m)) return false;
  for (std::size_t i = 0; i + 1 < certificate.size(); ++i)
    if (!one_step(certificate[i], certificate[i + 1]) && !one_step(certificate[i + 1], certificate[i]))
      return false;
  return true;
}

namespace {

// c[0] <= c[1] >= c[2] <= ... as fence slices.
bool fits_fence(const std::vector<const MultiMap*>& c) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const bool ok = i % 2 == 0 ? one_step(*c[i], *c[i + 1]) : one_step(*c[i + 1], *c[i]);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

MultiMap fence_homotopy(const std::vector<MultiMap>& certificate) {
  if (certificate.empty()) throw Error(ErrorKind::BadParams, "empty certificate");
  std::vector<const MultiMap*> order;
  for (const auto& m : certificate) order.push_back(&m);
  if (!fits_fence(order)) {
    std::reverse(order.begin(), order.end());
    if (!fits_fence(order)) throw Error(ErrorKind::BadParams, "certificate does not lay out on a fence");
  }
  const int k = static_cast<int>(certificate.size()) - 1;
  const MultiMap& first = certificate.front();
  SpacePtr cylinder = share(product(first.dom(), share(models::fence(k))));
  std::vector<PointSet> values(cylinder->size());
  for (int x = 0; x < first.dom()->size(); ++x)
    for (int t = 0; t <= k; ++t) values[x * (k + 1) + t] = (*order[t])(x);
  return MultiMap(cylinder, first.cod(), std::move(values));
}

std::vector<MultiMap> fence_shaped(std::vector<MultiMap> chain) {
  if (chain.size() <= 1) return chain;
  // Greedy merge: a step in the same direction as the previous one is
  // absorbed by transitivity.
  std::vector<MultiMap> out{chain.front()};
  std::vector<bool> up_steps;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const MultiMap& next = chain[i];
    if (next == out.back()) continue;
    if (out.size() >= 2) {
      const MultiMap& anchor = out[out.size() - 2];
      const bool last_up = up_steps.back();
      if (last_up ? one_step(anchor, next) : one_step(next, anchor)) {
        out.back() = next;
        if (out.back() == anchor) {
          out.pop_back();
          up_steps.pop_back();
        }
        continue;
      }
    }
    up_steps.push_back(one_step(out.back(), next));
    out.push_back(next);
  }
  if (up_steps.empty()) return out;
  const bool starts_up = up_steps.front();
  const bool ends_down = !up_steps.back();
  if (!starts_up && !ends_down) out.insert(out.begin(), out.front());
  return out;
}

EquivalenceVerdict check_homotopy_equivalence(const MultiMap& alpha, const MultiMap& beta,
                                              const SearchOptions& options) {
  EquivalenceVerdict v;
  v.source = are_m_homotopic(compose(beta, alpha), identity_map(alpha.dom()), options);
  v.target = are_m_homotopic(compose(alpha, beta), identity_map(alpha.cod()), options);
  return v;
}

}  // namespace mvtop
