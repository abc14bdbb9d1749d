#include "mvtop/fibration.hpp"

#include <algorithm>

#include "mvtop/assignment_search.hpp"
#include "mvtop/hyperspace.hpp"
#include "mvtop/models.hpp"

namespace mvtop {

std::string_view to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NotFound: return "NotFound";
    case SearchStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(FibrationCertificate c) {
  switch (c) {
    case FibrationCertificate::Constant: return "Constant";
    case FibrationCertificate::Projection: return "Projection";
    case FibrationCertificate::Homeomorphism: return "Homeomorphism";
    case FibrationCertificate::None: return "None";
  }
  return "None";
}

namespace {

// image[S] = union of rho(a) over a in S, for every subset mask S of A.
std::vector<PointSet> union_images(const MultiMap& rho) {
  const int n = rho.dom()->size();
  std::vector<PointSet> image(std::size_t{1} << n);
  for (std::uint32_t s = 1; s < image.size(); ++s) {
    int low = std::countr_zero(s);
    image[s] = image[s & (s - 1)] | rho(low);
  }
  return image;
}

int slice_index(int w, int t, int k) { return w * (k + 1) + t; }

}  // namespace

void validate_square(const CommutingSquare& sq) {
  if (!same_space(sq.alpha.dom(), sq.w)) throw Error(ErrorKind::DomainMismatch, "alpha must start at W");
  if (!same_space(sq.alpha.cod(), sq.rho.dom())) throw Error(ErrorKind::DomainMismatch, "alpha must land in dom(rho)");
  if (!same_space(sq.beta.cod(), sq.rho.cod())) throw Error(ErrorKind::DomainMismatch, "beta must land in cod(rho)");
  if (sq.k < 0) throw Error(ErrorKind::BadParams, "fence length must be >= 0");
  FiniteSpace cylinder = product(sq.w, share(models::fence(sq.k)));
  if (!(cylinder == *sq.beta.dom())) throw Error(ErrorKind::DomainMismatch, "beta must start at W x fence(k)");
  if (!is_m_continuous(sq.rho)) throw Error(ErrorKind::NotContinuous, "rho");
  if (!is_m_continuous(sq.alpha)) throw Error(ErrorKind::NotContinuous, "alpha");
  if (!is_m_continuous(sq.beta)) throw Error(ErrorKind::NotContinuous, "beta");
  MultiMap top = compose(sq.rho, sq.alpha);
  for (int w = 0; w < sq.w->size(); ++w)
    if (top(w) != sq.beta(slice_index(w, 0, sq.k)))
      throw Error(ErrorKind::NotCommuting, "rho . alpha differs from beta at (" + sq.w->label(w) + ", 0)");
}

FillerResult find_filler(const CommutingSquare& sq, std::uint64_t budget) {
  validate_square(sq);
  FillerResult result;
  if (MultiMap still = constant_filler(sq); is_valid_filler(sq, still)) {
    result.status = SearchStatus::Found;
    result.filler = std::move(still);
    return result;
  }
  const SpacePtr& a = sq.rho.dom();
  HyperStepTable table(*a);
  auto image = union_images(sq.rho);
  const SpacePtr& cylinder = sq.beta.dom();
  std::vector<std::vector<PointSet>> cands(cylinder->size());
  for (int w = 0; w < sq.w->size(); ++w) {
    for (int t = 0; t <= sq.k; ++t) {
      const int p = slice_index(w, t, sq.k);
      if (t == 0) {
        cands[p] = {sq.alpha(w)};
        continue;
      }
      for (PointSet s : table.values())
        if (image[s.bits()] == sq.beta(p)) cands[p].push_back(s);
    }
  }
  AssignmentSearch search(*cylinder, table, std::move(cands));
  std::vector<PointSet> found;
  auto outcome = search.run(
      [&](const std::vector<PointSet>& v) {
        found = v;
        return false;
      },
      budget);
  result.explored = search.nodes();
  if (outcome == AssignmentSearch::Outcome::Stopped) {
    result.status = SearchStatus::Found;
    result.filler = MultiMap(cylinder, a, std::move(found));
  } else if (outcome == AssignmentSearch::Outcome::BudgetHit) {
    result.status = SearchStatus::Unknown;
  } else {
    result.status = SearchStatus::NotFound;
  }
  return result;
}

bool is_valid_filler(const CommutingSquare& sq, const MultiMap& eta) {
  if (!same_space(eta.dom(), sq.beta.dom()) || !same_space(eta.cod(), sq.rho.dom())) return false;
  if (!semicontinuity(eta).m_continuous) return false;
  if (!(compose(sq.rho, eta) == sq.beta)) return false;
  for (int w = 0; w < sq.w->size(); ++w)
    if (eta(slice_index(w, 0, sq.k)) != sq.alpha(w)) return false;
  return true;
}

MultiMap constant_filler(const CommutingSquare& sq) {
  std::vector<PointSet> values(sq.beta.dom()->size());
  for (int w = 0; w < sq.w->size(); ++w)
    for (int t = 0; t <= sq.k; ++t) values[slice_index(w, t, sq.k)] = sq.alpha(w);
  return MultiMap(sq.beta.dom(), sq.rho.dom(), std::move(values));
}

FibrationCertificate fibration_certificate(const MultiMap& rho) {
  const auto& v = rho.values();
  if (std::all_of(v.begin(), v.end(), [&](PointSet s) { return s == v.front(); }))
    return FibrationCertificate::Constant;
  if (rho.dom()->factors()) {
    for (int i : {1, 2}) {
      MultiMap p = projection_map(rho.dom(), i);
      if (same_space(p.cod(), rho.cod()) && p.values() == rho.values()) return FibrationCertificate::Projection;
    }
  }
  if (classify(rho).m_homeomorphism) return FibrationCertificate::Homeomorphism;
  return FibrationCertificate::None;
}

Pullback pullback(const MultiMap& rho, const MultiMap& gamma) {
  if (!same_space(rho.cod(), gamma.cod())) throw Error(ErrorKind::DomainMismatch, "rho and gamma must share a codomain");
  const SpacePtr& a = rho.dom();
  const SpacePtr& b_prime = gamma.dom();
  SpacePtr ambient = share(product(b_prime, a));
  PointSet points;
  for (int bp = 0; bp < b_prime->size(); ++bp)
    for (int x = 0; x < a->size(); ++x)
      if (gamma(bp) == rho(x)) points.insert(bp * a->size() + x);
  if (points.empty()) throw Error(ErrorKind::EmptyPullback, "no pair (b', a) with gamma(b') = rho(a)");
  Subspace sub = subspace(*ambient, points);
  SpacePtr space = share(std::move(sub.space));
  std::vector<PointSet> first, second;
  for (int p : sub.embedding) {
    first.push_back(PointSet::singleton(p / a->size()));
    second.push_back(PointSet::singleton(p % a->size()));
  }
  return Pullback{space, MultiMap(space, b_prime, std::move(first)), MultiMap(space, a, std::move(second))};
}

SectionResult section_exists(const MultiMap& rho, PointSet c, std::uint64_t budget) {
  const FiniteSpace& b = *rho.cod();
  if (c.empty()) throw Error(ErrorKind::EmptySubset, "section domain must be nonempty");
  if (!c.within(b.size()) || !b.is_open(c)) throw Error(ErrorKind::NotOpen, to_string(c) + " is not open");
  const SpacePtr& a = rho.dom();
  HyperStepTable table(*a);
  // meet[S] = intersection of rho(a) over a in S.
  std::vector<PointSet> meet(std::size_t{1} << a->size());
  meet[0] = b.points();
  for (std::uint32_t s = 1; s < meet.size(); ++s) meet[s] = meet[s & (s - 1)] & rho(std::countr_zero(s));
  Subspace sub = subspace(b, c);
  SpacePtr dom = share(std::move(sub.space));
  std::vector<std::vector<PointSet>> cands(dom->size());
  for (int i = 0; i < dom->size(); ++i) {
    const PointSet want = PointSet::singleton(sub.embedding[i]);
    for (PointSet s : table.values())
      if (meet[s.bits()] == want) cands[i].push_back(s);
  }
  AssignmentSearch search(*dom, table, std::move(cands), /*index_order=*/true);
  SectionResult result;
  std::vector<PointSet> found;
  auto outcome = search.run(
      [&](const std::vector<PointSet>& v) {
        found = v;
        return false;
      },
      budget);
  result.explored = search.nodes();
  if (outcome == AssignmentSearch::Outcome::Stopped) {
    result.status = SearchStatus::Found;
    result.section = SectionAssignment{c, MultiMap(dom, a, std::move(found))};
  } else if (outcome == AssignmentSearch::Outcome::BudgetHit) {
    result.status = SearchStatus::Unknown;
  } else {
    result.status = SearchStatus::NotFound;
  }
  return result;
}

bool is_valid_section(const MultiMap& rho, const SectionAssignment& s) {
  const FiniteSpace& b = *rho.cod();
  if (s.c.empty() || !b.is_open(s.c)) return false;
  Subspace sub = subspace(b, s.c);
  if (!(sub.space == *s.delta.dom()) || !same_space(s.delta.cod(), rho.dom())) return false;
  if (!semicontinuity(s.delta).m_continuous) return false;
  for (int i = 0; i < s.delta.dom()->size(); ++i) {
    PointSet meet = b.points();
    for (int x : s.delta(i)) meet &= rho(x);
    if (meet != PointSet::singleton(sub.embedding[i])) return false;
  }
  return true;
}

CommutingSquare random_square(const MultiMap& rho, const SpacePtr& w, int k, std::mt19937_64& rng) {
  MultiMap alpha = models::random_map(w, rho.dom(), rng);
  MultiMap top = compose(rho, alpha);
  SpacePtr cylinder = share(product(w, share(models::fence(k))));
  HyperStepTable table(*rho.cod());
  std::vector<std::vector<PointSet>> cands(cylinder->size());
  const bool singletons_first = rng() % 2 == 0;
  for (int x = 0; x < w->size(); ++x) {
    for (int t = 0; t <= k; ++t) {
      auto& c = cands[slice_index(x, t, k)];
      if (t == 0) {
        c = {top(x)};
        continue;
      }
      c = table.values();
      std::shuffle(c.begin(), c.end(), rng);
      if (singletons_first) std::stable_partition(c.begin(), c.end(), [](PointSet s) { return s.size() == 1; });
    }
  }
  AssignmentSearch search(*cylinder, table, std::move(cands));
  std::vector<PointSet> found;
  search.run(
      [&](const std::vector<PointSet>& v) {
        found = v;
        return false;
      },
      200000);
  if (found.empty()) {
    // The stationary homotopy always exists.
    found.resize(cylinder->size());
    for (int x = 0; x < w->size(); ++x)
      for (int t = 0; t <= k; ++t) found[slice_index(x, t, k)] = top(x);
  }
  return CommutingSquare{w, rho, alpha, k, MultiMap(cylinder, rho.cod(), std::move(found))};
}

bool beta_within_rho_image(const CommutingSquare& sq) {
  auto image = union_images(sq.rho);
  std::vector<bool> reachable(image.size(), false);
  for (std::size_t s = 1; s < image.size(); ++s) reachable[image[s].bits()] = true;
  for (PointSet v : sq.beta.values())
    if (v.bits() >= reachable.size() || !reachable[v.bits()]) return false;
  return true;
}

}  // namespace mvtop
