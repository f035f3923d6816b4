#ifndef BIHARM_NORMS_HPP
#define BIHARM_NORMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "biharm/cap.hpp"
#include "biharm/field.hpp"
#include "biharm/multipliers.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/symmetry.hpp"

namespace biharm {

/// Quadrature value plus the error diagnostics that are reported, never
/// silently folded into the value.
struct NormReport {
  double value = 0.0;
  double quadrature_estimate = 0.0;
  double tail_bound = 0.0;
  double refinement_delta = 0.0;
  double tail_fit_constant = 0.0;
  double tail_fit_exponent = 0.0;
  double plateau_level = 0.0;        // box-equidistribution floor of the integrand
  bool tail_divergent = false;       // fitted envelope fails to integrate
  bool aliasing_headroom_ok = true;  // spectrum within nyquist/ceil(p/2)
  bool window_warning = false;       // tail_bound > 10% of value

  /// Escalates the window warning in strict mode.
  void enforce(bool strict) const;
};

/// Repeatedly evaluates e^{itP} applied to a fixed weighted spectrum.
class EvolutionSampler {
 public:
  EvolutionSampler(const GridSpec& g, std::vector<cd> weighted_spectrum,
                   std::vector<double> phase);
  const std::vector<cd>& sample(double t);
  const GridSpec& grid() const { return grid_; }
  const std::vector<cd>& weighted_spectrum() const { return wf_; }

 private:
  GridSpec grid_;
  std::vector<cd> wf_;
  std::vector<double> phase_;
  std::vector<cd> tmp_, u_;
};

double lp_power_sum(const std::vector<cd>& values, double p, double cell_volume);
double lr_norm(const std::vector<cd>& values, double r, double cell_volume);  // r may be inf

/// Assembles a NormReport from per-node integrand samples G_i ~ |u(t_i)|_p^p.
/// Nodes below 4x the plateau level (the periodic box's equidistribution
/// floor) are excluded from the tail fit.
NormReport assemble_report(const TimeQuadrature& quad, const std::vector<double>& G,
                           double p, double fallback_tail_exponent = 0.0,
                           double plateau_level = 0.0);

/// || D_mu^deriv S(t) f ||_{L^p_{t,x}} over the quadrature window.
NormReport spacetime_norm(const Field& f, const ModelParams& params, double deriv,
                          double p, const TimeQuadrature& quad,
                          const PropagatorSpec& prop = PropagatorSpec::fourth_order());

/// || D_mu^{2/q} S_mu(t) f ||_{L^q_t L^r_x} for an admissible pair (q, r):
/// 2 <= q, r <= inf, (q, r) != (2, inf), 2/q + d/r = d/2.
NormReport mixed_norm(const Field& f, const ModelParams& params, double q, double r,
                      const TimeQuadrature& quad);

/// || (D^s S u_A)(D^s S u_B) ||_{L^p_{t,x}} with u_X = apply_symmetry(f_X, s_X)
/// and s = d/(d+2).
NormReport product_norm(const Field& fA, const SymmetryParams& sA, const Field& fB,
                        const SymmetryParams& sB, const ModelParams& params, double p,
                        const TimeQuadrature& quad);

/// || (S(t) f_k1)(S(t) f_k2) ||_{L^p_{t,x}} under the quartic flow restricted
/// to the caps; requires p > (d+3)/(d+1).
struct BilinearReport {
  NormReport norm;
  bool comparability_ok = true;  // diam ~ diam ~ dist within factor 4
};
BilinearReport bilinear_cap_norm(const Field& f, const Cap& k1, const Cap& k2, double p,
                                 const TimeQuadrature& quad);

}  // namespace biharm

#endif
