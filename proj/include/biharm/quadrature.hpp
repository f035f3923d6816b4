#ifndef BIHARM_QUADRATURE_HPP
#define BIHARM_QUADRATURE_HPP

#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

/// Composite rule on [-t_max, t_max] discretizing the time integral of the
/// spacetime norms.
struct TimeQuadrature {
  double t_max = 1.0;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, sum to 2 t_max for uniform rules
  double tail_exponent = 0.0;   // fallback integrand decay rate for tail bounds
  bool symmetric = true;
  bool uniform_simpson = false;

  /// Uniform composite Simpson rule; `intervals` is rounded up to a multiple
  /// of four so the half-resolution rule reuses the same nodes.
  static TimeQuadrature simpson(double t_max, int intervals, double tail_exponent = 0.0);

  void validate() const;
  int num_nodes() const { return static_cast<int>(nodes.size()); }
};

}  // namespace biharm

#endif
