#include "mvtop/point_set.hpp"

#include <algorithm>

namespace mvtop {

std::vector<PointSet> subsets_of(PointSet universe, bool include_empty) {
  std::vector<PointSet> out;
  std::uint32_t u = universe.bits();
  // Enumerate submasks of u.
  std::uint32_t s = u;
  while (true) {
    if (s != 0 || include_empty) out.emplace_back(s);
    if (s == 0) break;
    s = (s - 1) & u;
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

std::string to_string(PointSet s) {
  std::string out = "{";
  bool first = true;
  for (int m : s) {
    if (!first) out += ",";
    out += std::to_string(m);
    first = false;
  }
  return out + "}";
}

}  // namespace mvtop
