#ifndef BIHARM_REFINED_HPP
#define BIHARM_REFINED_HPP

#include <utility>
#include <vector>

#include "biharm/norms.hpp"

namespace biharm {

/// Finite stand-in for the continuum cap supremum: dyadic annuli, dyadic
/// radii, centers on the frequency lattice with spacing ~ r/2.
struct DictionaryOptions {
  int annulus_min_log2 = 0;
  int annulus_max_log2 = 2;
  int max_radius_splits = 6;  // radii r = N 2^{-j}, j = 1..J (admissibility-filtered)
  double cap_diameter_constant = 1.0 / 16.0;  // tunable c_d: keep r <= c_d N
};

struct CapDictionary {
  std::vector<Cap> caps;
  std::vector<double> annulus_of;  // the dyadic annulus each cap was drawn for

  static CapDictionary generate(const GridSpec& g, const ModelParams& p,
                                const DictionaryOptions& opt);

  /// Every lattice frequency in [N/2, 2N] is within one cap of each radius
  /// scale present for that annulus.
  bool covers(const GridSpec& g) const;
};

struct RefinedReport {
  Cap best_cap;
  double cap_functional = 0.0;   // the bracketed supremum
  double strichartz_value = 0.0;
  double rhs_bound = 0.0;        // cap_functional^theta * |f|_2^(1-theta)
  double ratio = 0.0;            // strichartz_value / rhs_bound
};

/// |kappa|^{(d+2)/(dq) - 1/2} || S_mu(t) D_mu^{2/q} f_kappa ||_{L^q_{t,x}}
double cap_functional(const Field& f, const Cap& kappa, const ModelParams& params,
                      const TimeQuadrature& quad);

/// Maximizes cap_functional over the dictionary (deterministic tie-breaking);
/// optionally returns the full per-cap table.
RefinedReport refined_supremum(const Field& f, const CapDictionary& dict,
                               const ModelParams& params, const TimeQuadrature& quad,
                               std::vector<std::pair<Cap, double>>* table = nullptr);

/// (sup over Littlewood-Paley shells of the shell Strichartz norm,
///  full Strichartz norm); reported as a pair, no inequality enforced.
std::pair<double, double> decoupling_functional(const Field& f, const ModelParams& params,
                                                const TimeQuadrature& quad);

}  // namespace biharm

#endif
