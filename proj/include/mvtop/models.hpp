#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvtop/multimap.hpp"

namespace mvtop::models {

/// A catalog entry plus its integer parameters, e.g. {"fence", {3}}.
/// `cone` takes its base as a nested recipe.
struct ModelRecipe {
  std::string name;
  std::vector<int> params;
  std::vector<ModelRecipe> inner;
};

/// Parses "sierpinski", "discrete:3", "fence:2", "cone:circle4",
/// "cone:cone:point". Throws UnknownModel / BadParams.
ModelRecipe parse_recipe(const std::string& text);
std::string to_string(const ModelRecipe& recipe);

/// Builds a catalog space. Throws UnknownModel / BadParams.
FiniteSpace build(const ModelRecipe& recipe);
FiniteSpace build(const std::string& text);

/// Names and one-line descriptions of every catalog entry.
std::vector<std::pair<std::string, std::string>> catalog();

FiniteSpace point();
FiniteSpace sierpinski();
FiniteSpace discrete(int n);
FiniteSpace indiscrete(int n);
/// Points 0..k; odd points are open, U_i = {i-1, i, i+1} for even i.
FiniteSpace fence(int k);
FiniteSpace circle4();
FiniteSpace sphere6();
/// X plus a point "T" whose minimal neighbourhood is everything.
FiniteSpace cone(const FiniteSpace& x);
/// X plus a point p with U_p = U_anchor + {p}. p is a beat point, so the
/// result deformation retracts onto X.
FiniteSpace beat_extension(const FiniteSpace& x, int anchor);

/// x -> {x, -x} on circle4 (a<->c, b<->d) or sphere6 (also e<->f).
/// Throws UnknownModel for any other space.
MultiMap antipodal_pairing(const SpacePtr& space);
/// Catalog maps by name: "antipodal", "identity".
MultiMap build_map(const std::string& name, const SpacePtr& space);

/// Seeded random preorder on n points (1 <= n <= 7): a random relation
/// closed reflexively and transitively. Throws BadParams.
FiniteSpace random_space(int n, std::uint64_t seed);

/// Uniform-ish random m-continuous map, found by randomised backtracking.
/// Returns a constant map when the search budget runs out.
MultiMap random_map(const SpacePtr& dom, const SpacePtr& cod, std::mt19937_64& rng);

/// Random relabelling of `x` together with the relabelling m-homeomorphism
/// x => copy.
struct Relabelled {
  SpacePtr copy;
  MultiMap homeomorphism;
};
Relabelled relabel(const SpacePtr& x, std::uint64_t seed);

}  // namespace mvtop::models
