#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mvtop/multimap.hpp"

namespace mvtop {

/// Default cap on the number of maps a homotopy search may visit.
inline constexpr std::uint64_t kDefaultBudget = 200000;

enum class HomotopyStatus { Homotopic, NotHomotopic, Unknown };
std::string_view to_string(HomotopyStatus status);

/// Edge set of the map graph the search walks.
///
/// Comparable: any two m-continuous maps related by one_step in either
/// direction. Certificates are shortest fence homotopies.
///
/// SingleClass: the two maps additionally differ on exactly one class of
/// topologically indistinguishable domain points. Every Comparable edge
/// factors into SingleClass edges, so both graphs have the same connected
/// components; this one has far fewer edges per map. Certificates are
/// compressed into alternating chains afterwards.
///
/// Core: the same decision made on the cores of the domain and of the
/// value hyperspace (equivalent classes collapsed, beat points removed).
/// Both retractions are homotopy equivalences, so components correspond.
/// The certificate walks f onto the core, along the core path, and back
/// out to g; it is valid but not shortest.
enum class StepMode { Comparable, SingleClass, Core };
std::string_view to_string(StepMode mode);

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;  ///< maximum maps visited
  StepMode mode = StepMode::Comparable;
  int threads = 1;
  /// Null-homotopy targets only constants with one-point values.
  bool singleton_constants = false;
};

struct HomotopyVerdict {
  HomotopyStatus status = HomotopyStatus::Unknown;
  /// Homotopic only: starts at f, ends at the target, consecutive entries
  /// related by one_step in one direction, and the chain alternates so it
  /// lays out on a fence (see fence_homotopy).
  std::vector<MultiMap> certificate;
  std::uint64_t explored = 0;
  bool budget_hit = false;
};

/// hyper_step(f(x), g(x)) at every point. Throws DomainMismatch and
/// NotContinuous.
bool one_step(const MultiMap& f, const MultiMap& g);

/// Builds H on dom x Sierpinski with H(., 0) = f and H(., 1) = g and checks
/// its semicontinuity against every open set. Agrees with one_step.
bool direct_step_oracle(const MultiMap& f, const MultiMap& g);

HomotopyVerdict are_m_homotopic(const MultiMap& f, const MultiMap& g, const SearchOptions& options = {});
/// Homotopic iff f reaches some m-constant map (any nonempty value unless
/// singleton_constants is set).
HomotopyVerdict is_null_m_homotopic(const MultiMap& f, const SearchOptions& options = {});
HomotopyVerdict is_m_contractible(const SpacePtr& x, const SearchOptions& options = {});

/// Is there an m-path from a0 to a1, i.e. a chain of hyper-steps in either
/// direction between the two value sets? Throws EmptySubset.
bool m_path_exists(const FiniteSpace& x, PointSet a0, PointSet a1);
bool is_m_pathwise_connected(const FiniteSpace& x);
/// First pair of nonempty closed sets (canonical order) with no m-path
/// between them, if any.
std::optional<std::pair<PointSet, PointSet>> disconnected_closed_pair(const FiniteSpace& x);

/// Structural re-check of a certificate: endpoints, m-continuity of every
/// entry and one_step between neighbours. `g` may be omitted for
/// null-homotopy certificates, which must then end at a constant map.
bool is_valid_certificate(const std::vector<MultiMap>& certificate, const MultiMap& f,
                          const std::optional<MultiMap>& g);

/// Lays a certificate of k+1 maps out as one map dom x fence(k) => cod.
/// Slice 0 is the first or last entry, whichever orientation makes the chain
/// fit the fence. Throws BadParams when neither orientation fits.
MultiMap fence_homotopy(const std::vector<MultiMap>& certificate);

/// Compresses any one_step chain into one that fits a fence.
std::vector<MultiMap> fence_shaped(std::vector<MultiMap> chain);

/// Bounded helper: is beta . alpha ~ 1_A and alpha . beta ~ 1_B?
struct EquivalenceVerdict {
  HomotopyVerdict source;  ///< beta . alpha vs identity of dom(alpha)
  HomotopyVerdict target;  ///< alpha . beta vs identity of cod(alpha)
};
EquivalenceVerdict check_homotopy_equivalence(const MultiMap& alpha, const MultiMap& beta,
                                              const SearchOptions& options = {});

}  // namespace mvtop
