#include "mvtop/models.hpp"

#include <algorithm>
#include <numeric>

#include "mvtop/assignment_search.hpp"
#include "mvtop/hyperspace.hpp"

namespace mvtop::models {
namespace {

std::vector<std::string> numbered(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::BadParams, what);
}

// Splits "a:b:c" into "a" and "b:c".
std::pair<std::string, std::string> split_head(const std::string& text) {
  auto pos = text.find(':');
  if (pos == std::string::npos) return {text, ""};
  return {text.substr(0, pos), text.substr(pos + 1)};
}

int parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw Error(ErrorKind::BadParams, "not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::BadParams, "not an integer: " + s);
  }
}

}  // namespace

ModelRecipe parse_recipe(const std::string& text) {
  auto [head, rest] = split_head(text);
  ModelRecipe r{head, {}, {}};
  if (head == "point" || head == "sierpinski" || head == "circle4" || head == "sphere6") {
    require(rest.empty(), head + " takes no parameters");
  } else if (head == "discrete" || head == "indiscrete" || head == "fence") {
    require(!rest.empty(), head + " needs an integer parameter");
    r.params.push_back(parse_int(rest));
  } else if (head == "cone") {
    require(!rest.empty(), "cone needs a base model");
    r.inner.push_back(parse_recipe(rest));
  } else {
    throw Error(ErrorKind::UnknownModel, text);
  }
  return r;
}

std::string to_string(const ModelRecipe& recipe) {
  std::string out = recipe.name;
  for (int p : recipe.params) out += ":" + std::to_string(p);
  for (const auto& in : recipe.inner) out += ":" + to_string(in);
  return out;
}

FiniteSpace build(const ModelRecipe& r) {
  if (r.name == "point") return point();
  if (r.name == "sierpinski") return sierpinski();
  if (r.name == "circle4") return circle4();
  if (r.name == "sphere6") return sphere6();
  if (r.name == "discrete" || r.name == "indiscrete" || r.name == "fence") {
    require(r.params.size() == 1, r.name + " needs one parameter");
    if (r.name == "discrete") return discrete(r.params[0]);
    if (r.name == "indiscrete") return indiscrete(r.params[0]);
    return fence(r.params[0]);
  }
  if (r.name == "cone") {
    require(r.inner.size() == 1, "cone needs one base");
    return cone(build(r.inner[0]));
  }
  throw Error(ErrorKind::UnknownModel, r.name);
}

FiniteSpace build(const std::string& text) { return build(parse_recipe(text)); }

std::vector<std::pair<std::string, std::string>> catalog() {
  return {
      {"point", "one-point space"},
      {"sierpinski", "points 0 (closed) and 1 (open): U_0={0,1}, U_1={1}"},
      {"discrete:N", "N points, every subset open"},
      {"indiscrete:N", "N points, only the empty set and the whole space open"},
      {"fence:K", "points 0..K, odd points open, U_i={i-1,i,i+1} for even i"},
      {"circle4", "minimal finite circle: U_a={a}, U_c={c}, U_b={a,b,c}, U_d={a,c,d}"},
      {"sphere6", "minimal finite 2-sphere: circle4 plus e, f with U_e={a,b,c,d,e}, U_f={a,b,c,d,f}"},
      {"cone:MODEL", "MODEL plus a point T with U_T = everything"},
  };
}

FiniteSpace point() { return FiniteSpace::from_masks({"0"}, {PointSet{0}}); }

FiniteSpace sierpinski() { return FiniteSpace::from_masks({"0", "1"}, {PointSet{0, 1}, PointSet{1}}); }

FiniteSpace discrete(int n) {
  require(n >= 1 && n <= kMaxPoints, "discrete needs 1 <= n <= 32");
  std::vector<PointSet> u;
  for (int i = 0; i < n; ++i) u.push_back(PointSet::singleton(i));
  return FiniteSpace::from_masks(numbered(n), std::move(u));
}

FiniteSpace indiscrete(int n) {
  require(n >= 1 && n <= kMaxPoints, "indiscrete needs 1 <= n <= 32");
  return FiniteSpace::from_masks(numbered(n), std::vector<PointSet>(n, PointSet::full(n)));
}

FiniteSpace fence(int k) {
  require(k >= 0 && k < kMaxPoints, "fence needs 0 <= k < 32");
  std::vector<PointSet> u;
  for (int i = 0; i <= k; ++i) {
    PointSet s = PointSet::singleton(i);
    if (i % 2 == 0) {
      if (i > 0) s.insert(i - 1);
      if (i < k) s.insert(i + 1);
    }
    u.push_back(s);
  }
  return FiniteSpace::from_masks(numbered(k + 1), std::move(u));
}

FiniteSpace circle4() {
  // a=0, b=1, c=2, d=3
  return FiniteSpace::from_masks({"a", "b", "c", "d"},
                                 {PointSet{0}, PointSet{0, 1, 2}, PointSet{2}, PointSet{0, 2, 3}});
}

FiniteSpace sphere6() {
  return FiniteSpace::from_masks(
      {"a", "b", "c", "d", "e", "f"},
      {PointSet{0}, PointSet{0, 1, 2}, PointSet{2}, PointSet{0, 2, 3}, PointSet{0, 1, 2, 3, 4}, PointSet{0, 1, 2, 3, 5}});
}

FiniteSpace cone(const FiniteSpace& x) {
  const int n = x.size();
  require(n + 1 <= kMaxPoints, "cone too large");
  std::vector<std::string> labels = x.labels();
  std::string top = "T";
  while (x.find(top)) top += "'";
  labels.push_back(top);
  std::vector<PointSet> u = x.min_opens();
  u.push_back(PointSet::full(n + 1));
  return FiniteSpace::from_masks(std::move(labels), std::move(u));
}

FiniteSpace beat_extension(const FiniteSpace& x, int anchor) {
  const int n = x.size();
  require(anchor >= 0 && anchor < n, "anchor out of range");
  require(n + 1 <= kMaxPoints, "extension too large");
  std::vector<std::string> labels = x.labels();
  std::string name = "p";
  while (x.find(name)) name += "'";
  labels.push_back(name);
  std::vector<PointSet> u = x.min_opens();
  u.push_back(x.min_open(anchor) | PointSet::singleton(n));
  return FiniteSpace::from_masks(std::move(labels), std::move(u));
}

MultiMap antipodal_pairing(const SpacePtr& space) {
  std::vector<int> partner;
  if (*space == circle4()) {
    partner = {2, 3, 0, 1};
  } else if (*space == sphere6()) {
    partner = {2, 3, 0, 1, 5, 4};
  } else {
    throw Error(ErrorKind::UnknownModel, "antipodal pairing is defined on circle4 and sphere6 only");
  }
  std::vector<PointSet> values;
  for (int x = 0; x < space->size(); ++x) values.push_back(PointSet{x, partner[x]});
  return MultiMap(space, space, std::move(values));
}

MultiMap build_map(const std::string& name, const SpacePtr& space) {
  if (name == "antipodal") return antipodal_pairing(space);
  if (name == "identity") return identity_map(space);
  throw Error(ErrorKind::UnknownModel, "map " + name);
}

FiniteSpace random_space(int n, std::uint64_t seed) {
  require(n >= 1 && n <= 7, "random_space needs 1 <= n <= 7");
  std::mt19937_64 rng(seed);
  // Edge density varies per space so sparse and dense preorders both occur.
  const std::uint64_t density = 15 + rng() % 40;  // percent
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (int j = 0; j < n; ++j)
      if (i != j && rng() % 100 < density) reach[i][j] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<PointSet> u(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (reach[i][j]) u[i].insert(j);
  return FiniteSpace::from_masks(numbered(n), std::move(u));
}

MultiMap random_map(const SpacePtr& dom, const SpacePtr& cod, std::mt19937_64& rng) {
  HyperStepTable table(*cod);
  std::vector<std::vector<PointSet>> cands(dom->size());
  const bool singletons_first = rng() % 2 == 0;
  for (auto& c : cands) {
    c = table.values();
    std::shuffle(c.begin(), c.end(), rng);
    if (singletons_first)
      std::stable_partition(c.begin(), c.end(), [](PointSet s) { return s.size() == 1; });
  }
  AssignmentSearch search(*dom, table, std::move(cands));
  std::vector<PointSet> found;
  search.run(
      [&](const std::vector<PointSet>& v) {
        found = v;
        return false;
      },
      200000);
  if (found.empty()) found.assign(dom->size(), table.values()[rng() % table.values().size()]);
  return MultiMap(dom, cod, std::move(found));
}

Relabelled relabel(const SpacePtr& x, std::uint64_t seed) {
  const int n = x->size();
  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> labels(n);
  std::vector<PointSet> u(n);
  for (int p = 0; p < n; ++p) {
    labels[perm[p]] = "r" + x->label(p);
    PointSet mapped;
    for (int q : x->min_open(p)) mapped.insert(perm[q]);
    u[perm[p]] = mapped;
  }
  SpacePtr copy = share(FiniteSpace::from_masks(std::move(labels), std::move(u)));
  std::vector<PointSet> values;
  for (int p = 0; p < n; ++p) values.push_back(PointSet::singleton(perm[p]));
  return Relabelled{copy, MultiMap(x, copy, std::move(values))};
}

}  // namespace mvtop::models
