#include "mvtop/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace mvtop {

std::string to_string(const Bound& b) {
  switch (b.kind) {
    case BoundKind::Finite: return std::to_string(b.value);
    case BoundKind::Infinite: return "inf";
    case BoundKind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Yes: return "Yes";
    case Admissibility::No: return "No";
    case Admissibility::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(TmcMapMode mode) { return mode == TmcMapMode::Paired ? "paired" : "literal"; }

SearchOptions InvariantOptions::search() const {
  SearchOptions s;
  s.budget = budget;
  s.mode = mode;
  s.threads = 1;
  s.singleton_constants = singleton_constants;
  return s;
}

// ---------------------------------------------------------------- set cover

namespace {

struct CoverSearch {
  PointSet universe;
  std::vector<PointSet> sets;
  int best = 0;

  // Branch on the uncovered point with the fewest covering sets.
  void bound(PointSet covered, int used) {
    if (used >= best) return;
    PointSet open = universe - covered;
    if (open.empty()) {
      best = used;
      return;
    }
    int largest = 0;
    for (PointSet s : sets) largest = std::max(largest, (s & open).size());
    if (used + (open.size() + largest - 1) / largest >= best) return;
    int pick = -1, fewest = 1 << 30;
    for (int p : open) {
      int deg = 0;
      for (PointSet s : sets) deg += s.contains(p);
      if (deg < fewest) fewest = deg, pick = p;
    }
    std::vector<PointSet> options;
    for (PointSet s : sets)
      if (s.contains(pick)) options.push_back(s);
    std::stable_sort(options.begin(), options.end(),
                     [&](PointSet a, PointSet b) { return (a & open).size() > (b & open).size(); });
    for (PointSet s : options) bound(covered | s, used + 1);
  }
};

// Ascending index tuples of length k, first hit in lexicographic order.
bool lex_first(const std::vector<PointSet>& sets, PointSet universe, const std::vector<int>& last_cover,
               int k, int next, PointSet covered, std::vector<int>& chosen) {
  if (static_cast<int>(chosen.size()) == k) return covered == universe;
  for (int p : universe - covered)
    if (last_cover[p] < next) return false;
  const int slots = k - static_cast<int>(chosen.size());
  for (int i = next; i + slots <= static_cast<int>(sets.size()); ++i) {
    chosen.push_back(i);
    if (lex_first(sets, universe, last_cover, k, i + 1, covered | sets[i], chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> min_cover(PointSet universe, const std::vector<PointSet>& family) {
  if (universe.empty()) return std::vector<int>{};
  std::vector<PointSet> sets;
  PointSet all;
  for (PointSet s : family) {
    sets.push_back(s & universe);
    all |= s & universe;
  }
  if (all != universe) return std::nullopt;

  CoverSearch cs{universe, sets, static_cast<int>(sets.size()) + 1};
  cs.bound(PointSet{}, 0);

  std::vector<int> last_cover(kMaxPoints, -1);
  for (int i = 0; i < static_cast<int>(sets.size()); ++i)
    for (int p : sets[i]) last_cover[p] = i;
  std::vector<int> chosen;
  lex_first(sets, universe, last_cover, cs.best, 0, PointSet{}, chosen);
  return chosen;
}

// ---------------------------------------------------------------- pipeline

InvariantResult solve(const AdmissibilityProblem& problem, const InvariantOptions& options) {
  const FiniteSpace& x = *problem.space;
  InvariantResult result;
  result.invariant = problem.invariant;

  // The whole space first: when it is admissible the answer is 1 and the
  // open sets never need enumerating, which keeps large products usable.
  Admission whole = problem.test(x.points());
  if (whole.verdict == Admissibility::Yes) {
    result.tests = 1;
    result.explored = whole.explored;
    result.lower = result.upper = Bound::finite(1);
    result.decided = true;
    result.cover.push_back(CoverEntry{x.points(), std::move(whole)});
    return result;
  }

  std::vector<PointSet> opens;
  for (PointSet c : x.open_sets())
    if (!c.empty() && c != x.points()) opens.push_back(c);
  std::stable_sort(opens.begin(), opens.end(), [](PointSet a, PointSet b) { return a.size() > b.size(); });

  std::vector<std::pair<PointSet, Admission>> tested;
  tested.emplace_back(x.points(), std::move(whole));
  std::vector<PointSet> yes;

  const int threads = std::max(1, options.threads);
  std::size_t head = 0;
  while (head < opens.size()) {
    std::size_t end = head;
    while (end < opens.size() && opens[end].size() == opens[head].size()) ++end;
    std::vector<PointSet> layer;
    for (std::size_t i = head; i < end; ++i)
      if (std::none_of(yes.begin(), yes.end(), [&](PointSet y) { return opens[i].subset_of(y); }))
        layer.push_back(opens[i]);
    std::vector<Admission> out(layer.size());
    if (threads == 1 || layer.size() < 2) {
      for (std::size_t i = 0; i < layer.size(); ++i) out[i] = problem.test(layer[i]);
    } else {
      std::atomic<std::size_t> cursor{0};
      std::vector<std::thread> pool;
      const int workers = std::min<int>(threads, static_cast<int>(layer.size()));
      for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
          for (std::size_t i; (i = cursor++) < layer.size();) out[i] = problem.test(layer[i]);
        });
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (out[i].verdict == Admissibility::Yes) yes.push_back(layer[i]);
      tested.emplace_back(layer[i], std::move(out[i]));
    }
    head = end;
  }

  std::vector<std::pair<PointSet, const Admission*>> admissible, relaxed;
  for (const auto& [c, adm] : tested) {
    ++result.tests;
    result.explored += adm.explored;
    if (adm.verdict == Admissibility::Unknown) ++result.unknown;
    if (adm.verdict == Admissibility::No) {
      for (int p : x.points())
        if (x.min_open(p) == c) result.unreachable.insert(p);
      continue;
    }
    relaxed.emplace_back(c, &adm);
    if (adm.verdict == Admissibility::Yes) admissible.emplace_back(c, &adm);
  }

  if (!result.unreachable.empty()) {
    result.lower = result.upper = Bound::infinite();
    result.decided = true;
    return result;
  }

  auto by_canonical = [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); };
  std::sort(admissible.begin(), admissible.end(), by_canonical);
  std::sort(relaxed.begin(), relaxed.end(), by_canonical);

  std::vector<PointSet> family;
  for (const auto& e : admissible) family.push_back(e.first);
  if (auto cover = min_cover(x.points(), family)) {
    result.upper = Bound::finite(static_cast<int>(cover->size()));
    for (int i : *cover) result.cover.push_back(CoverEntry{admissible[i].first, *admissible[i].second});
  }
  family.clear();
  for (const auto& e : relaxed) family.push_back(e.first);
  // Every point's minimal neighbourhood is Yes, Unknown, or inside a Yes open.
  auto loose = min_cover(x.points(), family);
  result.lower = Bound::finite(loose ? static_cast<int>(loose->size()) : 1);
  result.decided = result.upper.kind == BoundKind::Finite && result.upper == result.lower;
  return result;
}

bool verify_result(const AdmissibilityProblem& problem, const InvariantResult& result) {
  const FiniteSpace& x = *problem.space;
  if (result.upper.kind == BoundKind::Infinite) {
    // Recheck that some point has no admissible neighbourhood at all.
    for (int p : result.unreachable)
      if (problem.test(x.min_open(p)).verdict == Admissibility::No) return true;
    return false;
  }
  if (result.upper.kind != BoundKind::Finite) return result.cover.empty();
  if (static_cast<int>(result.cover.size()) != result.upper.value) return false;
  PointSet covered;
  for (const auto& e : result.cover) {
    if (!x.is_open(e.open) || e.admission.verdict != Admissibility::Yes) return false;
    if (!problem.check(e.open, e.admission)) return false;
    covered |= e.open;
  }
  return covered == x.points();
}

// ---------------------------------------------------------------- problems

namespace {

Admission from_verdict(HomotopyVerdict v) {
  Admission a;
  a.explored = v.explored;
  switch (v.status) {
    case HomotopyStatus::Homotopic:
      a.verdict = Admissibility::Yes;
      a.chain = std::move(v.certificate);
      break;
    case HomotopyStatus::NotHomotopic: a.verdict = Admissibility::No; break;
    case HomotopyStatus::Unknown: a.verdict = Admissibility::Unknown; break;
  }
  return a;
}

std::string describe(const FiniteSpace& x, PointSet s) {
  std::string out = "{";
  bool first = true;
  for (int p : s) {
    if (!first) out += ",";
    out += x.label(p);
    first = false;
  }
  return out + "}";
}

void require_path_connected(const FiniteSpace& x, const char* role) {
  if (auto pair = disconnected_closed_pair(x))
    throw Error(ErrorKind::NotPathConnected, std::string(role) + ": no m-path between closed sets " +
                                                 describe(x, pair->first) + " and " + describe(x, pair->second));
}

}  // namespace

AdmissibilityProblem dm_problem(const MultiMap& alpha, const MultiMap& beta, const InvariantOptions& options) {
  if (!same_space(alpha.dom(), beta.dom()) || !same_space(alpha.cod(), beta.cod()))
    throw Error(ErrorKind::DomainMismatch, "D^m needs two maps with the same domain and codomain");
  if (!is_m_continuous(alpha)) throw Error(ErrorKind::NotContinuous, "first map");
  if (!is_m_continuous(beta)) throw Error(ErrorKind::NotContinuous, "second map");
  const SearchOptions search = options.search();
  AdmissibilityProblem p;
  p.invariant = "dm";
  p.space = alpha.dom();
  p.test = [alpha, beta, search](PointSet c) {
    return from_verdict(are_m_homotopic(restrict_map(alpha, c), restrict_map(beta, c), search));
  };
  p.check = [alpha, beta](PointSet c, const Admission& a) {
    return is_valid_certificate(a.chain, restrict_map(alpha, c), restrict_map(beta, c));
  };
  return p;
}

AdmissibilityProblem catm_map_problem(const MultiMap& alpha, const InvariantOptions& options) {
  if (!is_m_continuous(alpha)) throw Error(ErrorKind::NotContinuous, "map");
  const SearchOptions search = options.search();
  AdmissibilityProblem p;
  p.invariant = "catm-map";
  p.space = alpha.dom();
  p.test = [alpha, search](PointSet c) { return from_verdict(is_null_m_homotopic(restrict_map(alpha, c), search)); };
  p.check = [alpha, search](PointSet c, const Admission& a) {
    if (!is_valid_certificate(a.chain, restrict_map(alpha, c), std::nullopt)) return false;
    return !search.singleton_constants || a.chain.back()(0).size() == 1;
  };
  return p;
}

AdmissibilityProblem catm_space_problem(const SpacePtr& x, const InvariantOptions& options) {
  AdmissibilityProblem p = catm_map_problem(identity_map(x), options);
  p.invariant = "catm";
  return p;
}

AdmissibilityProblem tmc_space_problem(const SpacePtr& x, const InvariantOptions& options) {
  require_path_connected(*x, "space");
  SpacePtr xx = share(product(x, x));
  AdmissibilityProblem p = dm_problem(projection_map(xx, 1), projection_map(xx, 2), options);
  p.invariant = "tmc";
  return p;
}

AdmissibilityProblem tmc_map_problem(const MultiMap& alpha, TmcMapMode mode, const InvariantOptions& options) {
  if (!is_m_continuous(alpha)) throw Error(ErrorKind::NotContinuous, "map");
  if (alpha.range() != alpha.cod()->points())
    throw Error(ErrorKind::NotSurjective, "missing codomain points " +
                                              describe(*alpha.cod(), alpha.cod()->points() - alpha.range()));
  require_path_connected(*alpha.dom(), "domain");
  require_path_connected(*alpha.cod(), "codomain");
  SpacePtr xx = share(product(alpha.dom(), alpha.dom()));
  MultiMap first = compose(alpha, projection_map(xx, 1));
  AdmissibilityProblem p;
  if (mode == TmcMapMode::Paired) {
    p = dm_problem(first, compose(alpha, projection_map(xx, 2)), options);
  } else {
    if (!same_space(alpha.dom(), alpha.cod()))
      throw Error(ErrorKind::DomainMismatch, "literal mode compares with rho2 and needs cod = dom");
    p = dm_problem(first, projection_map(xx, 2), options);
  }
  p.invariant = "tmc-map";
  return p;
}

AdmissibilityProblem msecat_problem(const MultiMap& rho, const InvariantOptions& options) {
  if (!is_m_continuous(rho)) throw Error(ErrorKind::NotContinuous, "map");
  const std::uint64_t budget = options.budget;
  AdmissibilityProblem p;
  p.invariant = "msecat";
  p.space = rho.cod();
  p.test = [rho, budget](PointSet c) {
    SectionResult r = section_exists(rho, c, budget);
    Admission a;
    a.explored = r.explored;
    a.verdict = r.status == SearchStatus::Found      ? Admissibility::Yes
                : r.status == SearchStatus::NotFound ? Admissibility::No
                                                     : Admissibility::Unknown;
    a.section = std::move(r.section);
    return a;
  };
  p.check = [rho](PointSet c, const Admission& a) {
    return a.section && a.section->c == c && is_valid_section(rho, *a.section);
  };
  return p;
}

InvariantResult homotopic_distance(const MultiMap& alpha, const MultiMap& beta, const InvariantOptions& options) {
  return solve(dm_problem(alpha, beta, options), options);
}

InvariantResult catm_space(const SpacePtr& x, const InvariantOptions& options) {
  return solve(catm_space_problem(x, options), options);
}

InvariantResult catm_map(const MultiMap& alpha, const InvariantOptions& options) {
  return solve(catm_map_problem(alpha, options), options);
}

InvariantResult tmc_space(const SpacePtr& x, const InvariantOptions& options) {
  return solve(tmc_space_problem(x, options), options);
}

InvariantResult tmc_map(const MultiMap& alpha, TmcMapMode mode, const InvariantOptions& options) {
  return solve(tmc_map_problem(alpha, mode, options), options);
}

InvariantResult msecat(const MultiMap& rho, const InvariantOptions& options) {
  return solve(msecat_problem(rho, options), options);
}

}  // namespace mvtop
