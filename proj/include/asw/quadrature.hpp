#pragma once

#include "asw/model.hpp"

#include <vector>

namespace asw {

/// Composite Simpson rule on [-a, a] split at -b, 0, b. Nodes on the shared
/// breakpoints appear once per adjacent segment (weights add up correctly).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline constexpr int kDefaultPanels = 4096;

/// `panels` subintervals per segment; must be even and >= 2.
QuadratureRule split_simpson(const PotentialGeometry& geom, int panels = kDefaultPanels);

}  // namespace asw
