#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "mvtop/homotopy.hpp"
#include "mvtop/multimap.hpp"

namespace mvtop {

/// A lifting problem for rho: A => B. The homotopy beta lives on
/// W x fence(k), whose point (w, t) has index w * (k + 1) + t; the slice
/// t = 0 plays the role of W x {0}.
struct CommutingSquare {
  SpacePtr w;
  MultiMap rho;    ///< A => B
  MultiMap alpha;  ///< W => A
  int k = 1;
  MultiMap beta;   ///< W x fence(k) => B
};

/// Throws DomainMismatch, NotContinuous, or NotCommuting when rho . alpha
/// differs from the 0-slice of beta.
void validate_square(const CommutingSquare& square);

enum class SearchStatus { Found, NotFound, Unknown };
std::string_view to_string(SearchStatus status);

struct FillerResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<MultiMap> filler;  ///< eta: W x fence(k) => A
  std::uint64_t explored = 0;
};

/// The stationary filler eta(w, t) = alpha(w) when it solves the square;
/// otherwise backtracking over eta(w, t) with eta = alpha on the 0-slice,
/// the union of rho over eta(w, t) equal to beta(w, t), and eta
/// m-continuous.
FillerResult find_filler(const CommutingSquare& square, std::uint64_t budget = kDefaultBudget);

/// Independent re-check of the three filler constraints.
bool is_valid_filler(const CommutingSquare& square, const MultiMap& eta);

/// The filler of a constant rho suggested by the classical argument,
/// eta(w, t) = alpha(w). It solves the square exactly when beta is the
/// constant value of rho.
MultiMap constant_filler(const CommutingSquare& square);

/// Structural recognition. Homeomorphism and Projection certificates
/// guarantee fillers for every valid square. A Constant certificate only
/// covers squares whose beta stays at the constant value, since the union
/// of rho over any set is that value. None means "not recognised", not
/// "not a fibration".
enum class FibrationCertificate { Constant, Projection, Homeomorphism, None };
std::string_view to_string(FibrationCertificate c);
FibrationCertificate fibration_certificate(const MultiMap& rho);

/// gamma^*A = {(b', a) : gamma(b') = rho(a)} as a subspace of B' x A, with
/// its two coordinate projections. Throws DomainMismatch and EmptyPullback.
struct Pullback {
  SpacePtr space;
  MultiMap first;   ///< => B'
  MultiMap second;  ///< => A
};
Pullback pullback(const MultiMap& rho, const MultiMap& gamma);

/// An m-continuous delta on the subspace C of B with the intersection of
/// rho(a) over a in delta(b) equal to {b} for every b in C.
struct SectionAssignment {
  PointSet c;
  MultiMap delta;
};

struct SectionResult {
  SearchStatus status = SearchStatus::Unknown;
  std::optional<SectionAssignment> section;
  std::uint64_t explored = 0;
};

/// First section in canonical order (points of C in index order, values in
/// canonical order). Throws NotOpen and EmptySubset.
SectionResult section_exists(const MultiMap& rho, PointSet c, std::uint64_t budget = kDefaultBudget);
bool is_valid_section(const MultiMap& rho, const SectionAssignment& section);

/// A random valid square for rho: random m-continuous alpha on W, and a
/// random m-continuous beta whose 0-slice is rho . alpha.
CommutingSquare random_square(const MultiMap& rho, const SpacePtr& w, int k, std::mt19937_64& rng);

/// Whether every value of beta is a union of rho-values, a necessary
/// condition for any filler.
bool beta_within_rho_image(const CommutingSquare& square);

}  // namespace mvtop
