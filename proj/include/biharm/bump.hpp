#ifndef BIHARM_BUMP_HPP
#define BIHARM_BUMP_HPP

#include <cmath>

#include "biharm/grid.hpp"

namespace biharm {

/// Smooth, radial, non-increasing cutoff: identically 1 on {|xi| <= 1},
/// identically 0 on {|xi| >= 2}, with a C-infinity transition
///   exp(1 - 1/(1 - (r-1)^2))   for 1 < r < 2.
struct BumpProfile {
  double radial(double r) const {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double s = r - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
  }
  double operator()(const vecd& xi) const { return radial(norm(xi)); }
};

}  // namespace biharm

#endif
