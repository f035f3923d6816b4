#ifndef BIHARM_TEST_HELPERS_HPP
#define BIHARM_TEST_HELPERS_HPP

#include <cmath>
#include <vector>

#include "biharm/field.hpp"
#include "biharm/multipliers.hpp"
#include "biharm/quadrature.hpp"

namespace bt {

using namespace biharm;

inline GridSpec grid64() { return GridSpec(2, 64, 32.0); }
inline GridSpec grid128() { return GridSpec(2, 128, 32.0); }

inline double rel_diff(const Field& a, const Field& b) {
  const double den = std::max(a.l2_norm(), b.l2_norm());
  return den > 0 ? (a - b).l2_norm() / den : 0.0;
}

/// single exact lattice mode e^{i xi . x} with xi = (2 pi / L) k
inline Field lattice_mode(const GridSpec& g, const std::vector<int>& k) {
  GridTables tab(g);
  std::vector<cd> v(g.npoints());
  int m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    g.axis_indices(i, m);
    double ph = 0.0;
    for (int a = 0; a < g.dim; ++a) ph += g.freq(g.stored_index(k[a])) * tab.coord[m[a]];
    v[i] = std::polar(1.0, ph);
  }
  return Field::from_values(g, std::move(v));
}

inline std::size_t peak_index(const std::vector<cd>& v) {
  std::size_t best = 0;
  double bv = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > bv) { bv = std::abs(v[i]); best = i; }
  return best;
}

}  // namespace bt

#endif
