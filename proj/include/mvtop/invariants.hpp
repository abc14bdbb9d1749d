#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvtop/fibration.hpp"
#include "mvtop/homotopy.hpp"

namespace mvtop {

enum class BoundKind { Finite, Infinite, Unknown };

struct Bound {
  BoundKind kind = BoundKind::Unknown;
  int value = 0;  ///< meaningful for Finite only

  static Bound finite(int v) { return {BoundKind::Finite, v}; }
  static Bound infinite() { return {BoundKind::Infinite, 0}; }
  static Bound unknown() { return {BoundKind::Unknown, 0}; }
  friend bool operator==(const Bound&, const Bound&) = default;
};
std::string to_string(const Bound& b);

enum class Admissibility { Yes, No, Unknown };
std::string_view to_string(Admissibility a);

/// Outcome of testing one open set. A Yes carries the witness: a homotopy
/// chain for the homotopy-based invariants, a section for msecat.
struct Admission {
  Admissibility verdict = Admissibility::Unknown;
  std::vector<MultiMap> chain;
  std::optional<SectionAssignment> section;
  std::uint64_t explored = 0;
};

/// A monotone admissibility predicate on the open sets of `space`, plus an
/// independent checker for the witnesses it produces. Predicates must be
/// safe to call concurrently.
struct AdmissibilityProblem {
  std::string invariant;
  SpacePtr space;
  std::function<Admission(PointSet)> test;
  std::function<bool(PointSet, const Admission&)> check;
};

struct InvariantOptions {
  std::uint64_t budget = kDefaultBudget;  ///< per admissibility test
  StepMode mode = StepMode::Core;
  int threads = 1;
  bool singleton_constants = false;

  SearchOptions search() const;
};

struct CoverEntry {
  PointSet open;
  Admission admission;
};

struct InvariantResult {
  std::string invariant;
  Bound lower = Bound::finite(1);
  Bound upper = Bound::unknown();
  bool decided = false;
  /// Present when upper is Finite: exactly upper.value admissible opens,
  /// canonical order, each with its witness.
  std::vector<CoverEntry> cover;
  /// Points whose minimal neighbourhood is decided inadmissible (the
  /// reason for an infinite value).
  PointSet unreachable;
  std::uint64_t tests = 0;      ///< admissibility tests run
  std::uint64_t unknown = 0;    ///< tests that ran out of budget
  std::uint64_t explored = 0;   ///< summed search effort
};

/// Exact minimum cover of `universe` by members of `family`. Among optimal
/// covers the lexicographically smallest index tuple (indices into
/// `family`, ascending) is returned.
std::optional<std::vector<int>> min_cover(PointSet universe, const std::vector<PointSet>& family);

/// Maximal-admissible-open enumeration followed by exact set cover.
/// Opens are visited by descending size; an open inside a known admissible
/// open is skipped. Unknown opens count as admissible for `lower` and as
/// inadmissible for `upper`.
InvariantResult solve(const AdmissibilityProblem& problem, const InvariantOptions& options = {});

/// Re-checks a result: the cover covers the space and every witness passes
/// the problem's checker.
bool verify_result(const AdmissibilityProblem& problem, const InvariantResult& result);

AdmissibilityProblem dm_problem(const MultiMap& alpha, const MultiMap& beta, const InvariantOptions& options = {});
AdmissibilityProblem catm_map_problem(const MultiMap& alpha, const InvariantOptions& options = {});
AdmissibilityProblem catm_space_problem(const SpacePtr& x, const InvariantOptions& options = {});
AdmissibilityProblem tmc_space_problem(const SpacePtr& x, const InvariantOptions& options = {});

enum class TmcMapMode {
  Paired,   ///< alpha . rho1 against alpha . rho2, both X x X => Y
  Literal,  ///< alpha . rho1 against rho2; needs cod(alpha) = dom(alpha)
};
std::string_view to_string(TmcMapMode mode);
AdmissibilityProblem tmc_map_problem(const MultiMap& alpha, TmcMapMode mode, const InvariantOptions& options = {});
AdmissibilityProblem msecat_problem(const MultiMap& rho, const InvariantOptions& options = {});

/// Throws DomainMismatch, NotContinuous.
InvariantResult homotopic_distance(const MultiMap& alpha, const MultiMap& beta, const InvariantOptions& options = {});
InvariantResult catm_space(const SpacePtr& x, const InvariantOptions& options = {});
/// Throws NotContinuous.
InvariantResult catm_map(const MultiMap& alpha, const InvariantOptions& options = {});
/// Throws NotPathConnected naming a closed pair with no m-path between them.
InvariantResult tmc_space(const SpacePtr& x, const InvariantOptions& options = {});
/// Throws NotSurjective, NotPathConnected, DomainMismatch (Literal mode).
InvariantResult tmc_map(const MultiMap& alpha, TmcMapMode mode = TmcMapMode::Paired,
                        const InvariantOptions& options = {});
/// Throws NotContinuous.
InvariantResult msecat(const MultiMap& rho, const InvariantOptions& options = {});

}  // namespace mvtop
