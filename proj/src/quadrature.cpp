#include "biharm/quadrature.hpp"

#include <cmath>

namespace biharm {

TimeQuadrature TimeQuadrature::simpson(double t_max, int intervals, double tail_exponent) {
  if (t_max <= 0.0) throw schema_error("quadrature t_max must be positive");
  if (intervals < 4) intervals = 4;
  intervals = ((intervals + 3) / 4) * 4;
  TimeQuadrature q;
  q.t_max = t_max;
  q.tail_exponent = tail_exponent;
  q.symmetric = true;
  q.uniform_simpson = true;
  const double dt = 2.0 * t_max / intervals;
  q.nodes.resize(intervals + 1);
  q.weights.resize(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    q.nodes[i] = -t_max + i * dt;
    double w;
    if (i == 0 || i == intervals) w = 1.0;
    else if (i % 2 == 1) w = 4.0;
    else w = 2.0;
    q.weights[i] = w * dt / 3.0;
  }
  // exact symmetry of the node set
  for (int i = 0; i <= intervals / 2; ++i) q.nodes[intervals - i] = -q.nodes[i];
  q.validate();
  return q;
}

void TimeQuadrature::validate() const {
  if (nodes.empty() || nodes.size() != weights.size())
    throw schema_error("quadrature nodes/weights mismatch");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (!(nodes[i] > nodes[i - 1]))
      throw schema_error("quadrature nodes must be strictly increasing");
  for (double w : weights)
    if (!(w > 0.0)) throw schema_error("quadrature weights must be positive");
  if (std::abs(nodes.front()) > t_max || std::abs(nodes.back()) > t_max)
    throw schema_error("quadrature nodes exceed t_max");
  if (uniform_simpson) {
    double s = 0.0;
    for (double w : weights) s += w;
    if (std::abs(s - 2.0 * t_max) > 1e-12 * (1.0 + 2.0 * t_max))
      throw schema_error("uniform quadrature weights must sum to 2 t_max");
  }
}

}  // namespace biharm
