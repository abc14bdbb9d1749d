#pragma once

#include <cstdint>
#include <vector>

#include "mvtop/homotopy.hpp"

namespace mvtop::detail {

/// Deformation of a finite preorder onto its core: first every element goes
/// to the smallest index of its equivalence class, then beat points are
/// removed one at a time. Each removal moves one element to a comparable
/// element in a fixed direction, so every intermediate retraction is
/// comparable with the previous one.
struct CoreRetraction {
  std::vector<int> rep;                      ///< class representative
  std::vector<std::pair<int, int>> removed;  ///< (beat point, image), in order
  std::vector<int> retract;                  ///< element -> core element
  std::vector<int> core;                     ///< ascending
};

/// `up[p]` lists every q with p <= q; only elements with `alive[p]` take part.
CoreRetraction core_retraction(const std::vector<std::vector<std::uint64_t>>& up, const std::vector<bool>& alive);

/// Homotopy decision through the cores of the domain and of the value
/// hyperspace. `g == nullptr` asks for a constant target.
HomotopyVerdict core_homotopy(const MultiMap& f, const MultiMap* g, const SearchOptions& options);

}  // namespace mvtop::detail
