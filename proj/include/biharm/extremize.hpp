#ifndef BIHARM_EXTREMIZE_HPP
#define BIHARM_EXTREMIZE_HPP

#include <string>
#include <vector>

#include "biharm/anisotropic.hpp"
#include "biharm/norms.hpp"

namespace biharm {

struct ExtremizerReport {
  Field f_star;                  // unit L2 norm
  double ratio = 0.0;            // achieved Strichartz quotient
  std::vector<double> iterates;  // ratio per iteration, in full
  bool converged = false;        // relative change < tol over the last 5 iterations
  bool monotone = true;          // no drop beyond 1e-9 relative
  bool degenerate = false;       // spectral spread below 4 modes somewhere
  std::string propagator_tag;    // "fourth_order_mu" or "schrodinger"
};

/// || D_mu^{d/(d+2)} S_mu(t) f || / |f|_2 for the quartic branch;
/// || e^{i sign t Delta} f || / |f|_2 (no derivative weight) for schrodinger.
double strichartz_ratio(const Field& f, const ModelParams& params,
                        const TimeQuadrature& quad,
                        const PropagatorSpec& prop = PropagatorSpec::fourth_order());

/// Normalized fixed-point ascent f <- normalize(T* |Tf|^{p-2} Tf).
ExtremizerReport ascend(const Field& init, const ModelParams& params,
                        const TimeQuadrature& quad, int iters, double tol,
                        const PropagatorSpec& prop = PropagatorSpec::fourth_order());

/// 3^{-1/(2(d+2))} 2^{-d/(2(d+2))}
double lower_bound_constant(int d);

enum class ComparisonKind { A0_vs_B, A1_vs_B, A1_vs_A0 };

struct TrajectoryRow {
  int n = 0;
  double parameter = 0.0;  // |h xi| or h, depending on the experiment
  double ratio = 0.0;
  bool valid = true;
};

/// Evaluates the quartic ratio along the lower-bound construction driven by
/// the schedule; the table truncates at the last band-limit-valid entry.
std::vector<TrajectoryRow> comparison_experiment(ComparisonKind kind, const Field& psi,
                                                 const std::vector<SymmetryParams>& schedule,
                                                 const ModelParams& params,
                                                 const TimeQuadrature& quad);

}  // namespace biharm

#endif
