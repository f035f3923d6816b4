#ifndef BIHARM_PROFILES_HPP
#define BIHARM_PROFILES_HPP

#include <optional>
#include <string>
#include <vector>

#include "biharm/refined.hpp"

namespace biharm {

/// One extracted bubble: the unit-scale profile and the pseudo-symmetry that
/// places it in the input.
struct Profile {
  Field phi;
  SymmetryParams params;
  double energy = 0.0;  // |phi|_2^2
  enum class Modulation { xi_zero, xi_large } classification = Modulation::xi_zero;
};

struct DecompStep {
  int index = 0;
  double residual_norm = 0.0;      // A^l before extraction
  double strichartz_norm = 0.0;    // eps^l before extraction
  Cap cap;
  double functional_value = 0.0;
  double t_star = 0.0;
  vecd x_star;
  double amplitude = 0.0;
  double profile_energy = 0.0;
  double cross_term = 0.0;          // 2 Re<B^-1 w, phi> - 2 |phi|^2
  double pythagorean_defect = 0.0;  // energy ledger residue of this step
  double fitted_c = 0.0;            // constant solving the decrement identity
  double predicted_next_norm = 0.0; // ceiling from the running fitted constant
  double next_residual_norm = 0.0;
};

struct DecompositionResult {
  std::vector<Profile> profiles;
  Field residual;
  std::vector<DecompStep> steps;
  double input_norm = 0.0;
  double final_strichartz = 0.0;
  bool stagnated = false;
  bool reached_max_profiles = false;

  /// | input - (sum_j B_j phi_j + residual) |_2 / |input|_2
  double reconstruction_defect(const Field& input) const;
  /// |input|^2 - sum energies - |residual|^2 minus the recorded cross terms
  double energy_ledger_defect() const;
};

std::pair<Cap, double> select_cap(const Field& w, const CapDictionary& dict,
                                  const ModelParams& params, const TimeQuadrature& quad);

struct PeakLocation {
  double t_star = 0.0;
  vecd x_star;
  double amplitude = 0.0;  // |kappa|^{-1/2} |S(t*) w_kappa (x*)|
};
PeakLocation locate_peak(const Field& w, const Cap& kappa, const ModelParams& params,
                         const TimeQuadrature& quad);

/// Finite-grid weak-limit surrogate: windowed inverse-symmetry transform.
/// Profiles with |h xi| below the dichotomy threshold are re-expressed with
/// xi = 0 by folding the modulation into phi.
Profile extract_profile(const Field& w, const Cap& kappa, double t_star,
                        const vecd& x_star, const ModelParams& params,
                        double window_radius, double dichotomy_threshold = 8.0);

struct DecomposeOptions {
  int max_profiles = 6;
  double stop_eps = 0.0;        // absolute threshold on the residual Strichartz norm
  double window_radius = 0.0;   // 0 selects the default L/8
  double stagnation_tol = 1e-6;
  double dichotomy_threshold = 8.0;
};

DecompositionResult decompose(const Field& u, const ModelParams& params,
                              const CapDictionary& dict, const TimeQuadrature& quad,
                              const DecomposeOptions& opt);

/// Inner products <(B_n^k)^{-1} B_n^j phi, psi> along a parameter schedule,
/// one row per n, one column per tester.
struct WeakLimitTable {
  std::vector<std::vector<cd>> rows;
  int valid_entries = 0;  // rows before the first resolution failure
  bool truncated = false;
};
WeakLimitTable weak_limit_probe(const std::vector<SymmetryParams>& a_sched,
                                const std::vector<SymmetryParams>& b_sched,
                                const Field& phi, const std::vector<Field>& testers);

}  // namespace biharm

#endif
