#ifndef BIHARM_MULTIPLIERS_HPP
#define BIHARM_MULTIPLIERS_HPP

#include <functional>
#include <vector>

#include "biharm/bump.hpp"
#include "biharm/cap.hpp"
#include "biharm/field.hpp"
#include "biharm/types.hpp"

namespace biharm {

enum class PropKind { fourth_order, schrodinger };

/// Which one-parameter group evolves the data: the quartic family
/// e^{it(Delta^2 - mu Delta)} or the free Schroedinger group e^{i sign t Delta}.
struct PropagatorSpec {
  PropKind kind = PropKind::fourth_order;
  int schrodinger_sign = +1;

  static PropagatorSpec fourth_order() { return {PropKind::fourth_order, +1}; }
  static PropagatorSpec schrodinger(int sign = +1) { return {PropKind::schrodinger, sign}; }
};

/// Phase table P(xi) such that the propagator multiplies spectra by e^{i t P(xi)}.
/// fourth_order: P = |xi|^4 + mu |xi|^2;  schrodinger(sign): P = -sign |xi|^2.
std::vector<double> phase_table(const GridSpec& g, const ModelParams& p,
                                const PropagatorSpec& prop);

/// Weight table (mu + |xi|^2)^{s/2} for the operator D_mu^s.
/// Throws degeneracy_error when mu = 0, s < 0 and the zero mode carries mass.
std::vector<double> fractional_weight_table(const GridSpec& g, const ModelParams& p,
                                            double s, const std::vector<cd>* spectrum);

Field apply_multiplier(const Field& f, const std::function<cd(const vecd&)>& symbol);
Field apply_multiplier_table(const Field& f, const std::vector<cd>& table);
Field apply_phase_table(const Field& f, const std::vector<double>& phase, double t);

Field fractional_derivative(const Field& f, const ModelParams& p, double s);
Field propagate(const Field& f, const ModelParams& p, double t);
Field schrodinger_propagate(const Field& f, double t, int sign = +1);

/// Littlewood-Paley shell symbol.  mu_mode 0: N dyadic (2^Z); mu_mode 1:
/// N = 0 means phi(2 xi), otherwise N in 2^{0,1,2,...}.
double lp_symbol(double abs_xi, double N, int mu_mode, const BumpProfile& bump);
Field littlewood_paley_project(const Field& f, double N, const ModelParams& p,
                               const BumpProfile& bump);
/// The dyadic shells that cover this grid's lattice for the given mu mode.
std::vector<double> lp_shells(const GridSpec& g, int mu_mode);

/// f_kappa: spectrum multiplied by phi((xi - center)/radius).
/// When `check` is non-null the cap must be mu-admissible unless
/// override_admissibility is set.
Field cap_project(const Field& f, const Cap& kappa, const BumpProfile& bump,
                  const ModelParams* check = nullptr,
                  bool override_admissibility = false);

/// L2 mass of f under the cap cutoff (cheap screen before norm evaluation).
double cap_energy(const Field& f, const Cap& kappa, const BumpProfile& bump);

}  // namespace biharm

#endif
