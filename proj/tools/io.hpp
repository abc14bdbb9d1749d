#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "mvtop/fibration.hpp"
#include "mvtop/invariants.hpp"

namespace mvtop::io {

using json = nlohmann::json;

/// Parses JSON text; syntax errors become Schema errors with line/column.
json parse_text(const std::string& text, const std::string& origin);
json read_file(const std::string& path);

/// A space is either a model recipe string ("circle4", "cone:sierpinski")
/// or {"points": [labels...], "min_open": {label: [labels...]}}.
SpacePtr parse_space(const json& j);
json space_to_json(const FiniteSpace& x);

/// {"dom": space, "cod": space, "values": {label: [labels...]}}, or a
/// catalogue map {"model": "antipodal" | "identity", "space": space}.
MultiMap parse_map(const json& j);
/// Values only, keyed by domain label.
json values_to_json(const MultiMap& f);
json map_to_json(const MultiMap& f);

PointSet parse_pointset(const FiniteSpace& x, const json& j, const std::string& field);
json pointset_to_json(const FiniteSpace& x, PointSet s);

json verdict_to_json(const HomotopyVerdict& v);
json certificate_to_json(const std::vector<MultiMap>& chain);
json invariant_to_json(const InvariantResult& r, const FiniteSpace& space);
json square_to_json(const CommutingSquare& sq);
CommutingSquare parse_square(const MultiMap& rho, const json& j);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string digest(const json& j);

}  // namespace mvtop::io
