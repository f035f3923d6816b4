#ifndef BIHARM_CAP_HPP
#define BIHARM_CAP_HPP

#include <cmath>
#include <string>

#include "biharm/grid.hpp"
#include "biharm/types.hpp"

namespace biharm {

inline double unit_ball_volume(int d) {
  return std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Frequency ball {|xi - center| < radius}.  A mu-cap additionally satisfies
/// 8 r <= |center| + sqrt(mu).
struct Cap {
  vecd center;
  double radius = 0.0;

  Cap() = default;
  Cap(vecd c, double r) : center(std::move(c)), radius(r) {
    if (radius <= 0.0) throw schema_error("cap radius must be positive");
  }

  bool admissible(const ModelParams& p) const {
    return 8.0 * radius <= norm(center) + std::sqrt(p.mu);
  }
  double volume() const {
    return unit_ball_volume(static_cast<int>(center.size())) *
           std::pow(radius, static_cast<double>(center.size()));
  }
  std::string str() const {
    std::string s = "cap(center=(";
    for (std::size_t i = 0; i < center.size(); ++i)
      s += (i ? "," : "") + std::to_string(center[i]);
    return s + "), r=" + std::to_string(radius) + ")";
  }
};

/// Deterministic ordering used for argmax tie-breaking: (radius, center...).
inline bool cap_less(const Cap& a, const Cap& b) {
  if (a.radius != b.radius) return a.radius < b.radius;
  for (std::size_t i = 0; i < a.center.size(); ++i)
    if (a.center[i] != b.center[i]) return a.center[i] < b.center[i];
  return false;
}

}  // namespace biharm

#endif
