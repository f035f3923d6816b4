#ifndef BIHARM_LIMITS_HPP
#define BIHARM_LIMITS_HPP

#include <functional>
#include <string>
#include <vector>

#include "biharm/norms.hpp"

namespace biharm {

/// Closed-form parameter trajectory driving one divergence hypothesis.
struct DecaySchedule {
  std::string name;
  std::string divergence_tag;
  std::vector<SymmetryParams> entries;

  static DecaySchedule build(std::string name, std::string tag, int K,
                             const std::function<SymmetryParams(int)>& gen);
};

/// Two-branch spacetime majorant
///   v(s, y) = C [ (1+|y|)^{-d/2} on |y| >= branch_ratio |s|,
///                 (1+|s|)^{-d/2} otherwise ].
struct EnvelopeFn {
  double C = 1.0;
  double branch_ratio = 100.0;
  int d = 2;
  double value(double s, double abs_y) const;
  /// L^{2(d+2)/d}_{s,y} norm by radial quadrature over [-s_max,s_max] x {|y|<=y_max}.
  double lp_norm(double s_max, double y_max, int samples) const;
};

struct EnvelopeCheckResult {
  int violations_fitted = 0;  // against the fitted C (0 by construction)
  int violations_coarse = 0;  // against 1.5 x the coarse-pass C
  double fitted_C = 0.0;
  double coarse_C = 0.0;
  double decay_slope = 0.0;           // log sup|v| vs log(1+|s|)
  double peak_track_max_rel_err = 0.0;
  double branch_ratio = 0.0;
};

/// Checks the pointwise envelope bound for D^{d/(d+2)} S_mu(t) e^{i(.)a} psi
/// on the given sample times (all lattice points per time).
EnvelopeCheckResult envelope_check(const Field& psi, const ModelParams& params,
                                   const vecd& a, const std::vector<double>& sample_times);

struct OrthDecayRow {
  int n = 0;
  double value = 0.0;
  double divergence_total = 0.0;
  bool valid = true;
};

/// product_norm along a pair of schedules; truncates at the first
/// band-limit failure.
std::vector<OrthDecayRow> orthogonality_decay(const Field& phiJ, const Field& phiK,
                                              const DecaySchedule& schedJ,
                                              const DecaySchedule& schedK,
                                              const ModelParams& params, double p,
                                              const TimeQuadrature& quad);

enum class LimitKind { L43_46, L44_47, L44_48, L44_49, L44_50 };
enum class ReducedKind { R57, R58, R59, R60, R61 };

struct DeficitRow {
  int n = 0;
  double parameter = 0.0;
  double direct_deficit = 0.0;
  double comparison_norm = 0.0;
  double reduced_value = 0.0;          // literal reduced-form norm, matched nodes
  double normalization_deficit = 0.0;  // L2 gap between the weight and its normalizer
  double equivalence_gap = 0.0;        // |direct_core - K reduced| / comparison
  bool valid = true;
};

/// Per-n deficit between the quartic wave and its comparison wave, plus the
/// matched-frame reduced value and the exact-identity residue.
std::vector<DeficitRow> limit_deficit(LimitKind kind, const Field& phi,
                                      const DecaySchedule& schedule,
                                      const ModelParams& params,
                                      const TimeQuadrature& quad);

/// The reduced-form multiplier difference || [e^{it PHI} - 1] e^{it PSI} phi ||
/// with the kind's polynomial symbols, over the caller's quadrature.
double reduced_form(ReducedKind kind, const Field& phi, const SymmetryParams& par,
                    const ModelParams& params, const TimeQuadrature& quad);

}  // namespace biharm

#endif
