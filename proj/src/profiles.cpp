#include "biharm/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace biharm {

double DecompositionResult::reconstruction_defect(const Field& input) const {
  Field acc = residual;
  for (const Profile& p : profiles)
    acc = acc + apply_symmetry(p.phi, p.params, nullptr, BandLimitPolicy::tolerate);
  const double in = input.l2_norm();
  return in > 0.0 ? (input - acc).l2_norm() / in : (input - acc).l2_norm();
}

double DecompositionResult::energy_ledger_defect() const {
  double lhs = input_norm * input_norm - residual.l2_norm_sq();
  for (const Profile& p : profiles) lhs -= p.energy;
  double recorded = 0.0;
  for (const DecompStep& s : steps) recorded += s.cross_term + s.pythagorean_defect;
  return lhs - recorded;
}

std::pair<Cap, double> select_cap(const Field& w, const CapDictionary& dict,
                                  const ModelParams& params, const TimeQuadrature& quad) {
  if (dict.caps.empty()) throw schema_error("empty cap dictionary");
  const double l2 = w.l2_norm();
  if (l2 == 0.0) throw degeneracy_error("cannot select a cap for the zero field");
  BumpProfile bump;
  const double prune = 1e-18 * l2 * l2;
  Cap best;
  double best_val = -1.0;
  for (const Cap& cap : dict.caps) {
    double val = 0.0;
    if (cap_energy(w, cap, bump) > prune) val = cap_functional(w, cap, params, quad);
    if (best_val < 0.0 || val > best_val ||
        (val == best_val && cap_less(cap, best))) {
      best = cap;
      best_val = val;
    }
  }
  return {best, best_val};
}

namespace {

struct NodePeak {
  double value = 0.0;
  std::size_t flat = 0;
};

NodePeak field_peak(const std::vector<cd>& u) {
  NodePeak p;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    if (a > p.value) { p.value = a; p.flat = i; }
  }
  return p;
}

}  // namespace

PeakLocation locate_peak(const Field& w, const Cap& kappa, const ModelParams& params,
                         const TimeQuadrature& quad) {
  quad.validate();
  BumpProfile bump;
  Field wk = cap_project(w, kappa, bump);
  if (wk.l2_norm() == 0.0)
    throw degeneracy_error("cap-projected field vanishes; no peak to locate");
  const GridSpec& g = w.grid();
  EvolutionSampler sampler(g, wk.spectrum(),
                           phase_table(g, params, PropagatorSpec::fourth_order()));
  std::vector<NodePeak> peaks(quad.nodes.size());
  double gmax = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    peaks[i] = field_peak(sampler.sample(quad.nodes[i]));
    gmax = std::max(gmax, peaks[i].value);
  }
  // ties within rounding prefer the smallest |t|, then the earliest node,
  // then the lexicographically first lattice point
  const double tie = gmax * (1.0 - 1e-12);
  std::size_t best = 0;
  bool have = false;
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    if (peaks[i].value < tie) continue;
    if (!have || std::abs(quad.nodes[i]) < std::abs(quad.nodes[best]) - 1e-15) {
      best = i;
      have = true;
    }
  }
  double t_star = quad.nodes[best];
  double v_star = peaks[best].value;
  std::size_t flat_star = peaks[best].flat;

  // one golden-section pass around the winning node
  const double span = (best == 0 ? quad.nodes[1] - quad.nodes[0]
                                 : quad.nodes[best] - quad.nodes[best - 1]);
  double lo = t_star - span, hi = t_star + span;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  auto eval = [&](double t) { return field_peak(sampler.sample(t)); };
  NodePeak pc = eval(c), pd = eval(d);
  for (int it = 0; it < 28; ++it) {
    if (pc.value >= pd.value) {
      hi = d; d = c; pd = pc;
      c = hi - gr * (hi - lo);
      pc = eval(c);
    } else {
      lo = c; c = d; pc = pd;
      d = lo + gr * (hi - lo);
      pd = eval(d);
    }
  }
  const NodePeak& pr = pc.value >= pd.value ? pc : pd;
  const double tr = pc.value >= pd.value ? c : d;
  if (pr.value > v_star * (1.0 + 1e-12)) {
    t_star = tr;
    v_star = pr.value;
    flat_star = pr.flat;
  }

  PeakLocation out;
  out.t_star = t_star;
  out.amplitude = v_star / std::sqrt(kappa.volume());
  GridTables tab(g);
  int m[3] = {0, 0, 0};
  g.axis_indices(flat_star, m);
  out.x_star.resize(g.dim);
  for (int a = 0; a < g.dim; ++a) out.x_star[a] = tab.coord[m[a]];
  return out;
}

namespace {

Field window_multiply(const Field& f, double radius) {
  const GridSpec& g = f.grid();
  GridTables tab(g);
  std::vector<cd> v(f.values());
  int m[3] = {0, 0, 0};
  BumpProfile bump;
  for (std::size_t i = 0; i < v.size(); ++i) {
    g.axis_indices(i, m);
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) r2 += tab.coord[m[a]] * tab.coord[m[a]];
    v[i] *= bump.radial(std::sqrt(r2) / radius);
  }
  return Field::from_values(g, std::move(v));
}

}  // namespace

Profile extract_profile(const Field& w, const Cap& kappa, double t_star,
                        const vecd& x_star, const ModelParams& params,
                        double window_radius, double dichotomy_threshold) {
  const GridSpec& g = w.grid();
  if (window_radius <= 0.0) window_radius = g.box_length / 8.0;
  Profile prof;
  prof.params = SymmetryParams(1.0 / kappa.radius, kappa.center, x_star, t_star, params.mu);
  SymmetryDiagnostics diag;
  Field y = invert_symmetry(w, prof.params, &diag, BandLimitPolicy::tolerate);
  prof.phi = window_multiply(y, window_radius);
  const double b = norm(diag.modulation_applied);
  if (b >= dichotomy_threshold) {
    prof.classification = Profile::Modulation::xi_large;
  } else {
    prof.classification = Profile::Modulation::xi_zero;
    if (b > 0.0) {
      // fold e^{i x . h xi} into the profile and zero the modulation
      prof.phi = modulate(prof.phi, diag.modulation_applied);
      prof.params.xi.assign(g.dim, 0.0);
    }
  }
  prof.energy = prof.phi.l2_norm_sq();
  return prof;
}

DecompositionResult decompose(const Field& u, const ModelParams& params,
                              const CapDictionary& dict, const TimeQuadrature& quad,
                              const DecomposeOptions& opt) {
  const GridSpec& g = u.grid();
  const ExponentSet ex = ExponentSet::for_dim(params.dim);
  const double deriv = ex.deriv_order.value();
  const double pS = ex.p_strichartz.value();
  const double theta_prime = ex.theta_prime.value();
  const double window = opt.window_radius > 0.0 ? opt.window_radius : g.box_length / 8.0;

  DecompositionResult res;
  res.input_norm = u.l2_norm();
  Field w = u;
  double running_c = 0.0;
  bool have_c = false;
  for (int l = 0; l < opt.max_profiles; ++l) {
    const double A = w.l2_norm();
    const double eps =
        A == 0.0 ? 0.0 : spacetime_norm(w, params, deriv, pS, quad).value;
    if (eps <= opt.stop_eps || A == 0.0) {
      res.final_strichartz = eps;
      res.residual = w;
      return res;
    }
    DecompStep step;
    step.index = l;
    step.residual_norm = A;
    step.strichartz_norm = eps;
    auto [cap, fval] = select_cap(w, dict, params, quad);
    step.cap = cap;
    step.functional_value = fval;
    PeakLocation peak = locate_peak(w, cap, params, quad);
    step.t_star = peak.t_star;
    step.x_star = peak.x_star;
    step.amplitude = peak.amplitude;
    Profile prof = extract_profile(w, cap, peak.t_star, peak.x_star, params, window,
                                   opt.dichotomy_threshold);
    step.profile_energy = prof.energy;
    if (prof.energy < std::pow(opt.stagnation_tol * res.input_norm, 2)) {
      res.stagnated = true;
      res.final_strichartz = eps;
      res.residual = w;
      res.steps.push_back(step);
      return res;
    }
    Field y = invert_symmetry(w, prof.params, nullptr, BandLimitPolicy::tolerate);
    step.cross_term = 2.0 * inner_product(y, prof.phi).real() - 2.0 * prof.energy;
    Field image = apply_symmetry(prof.phi, prof.params, nullptr, BandLimitPolicy::tolerate);
    Field w_next = w - image;
    step.next_residual_norm = w_next.l2_norm();
    step.pythagorean_defect = (A * A - step.next_residual_norm * step.next_residual_norm -
                               prof.energy) -
                              step.cross_term;
    // decrement bookkeeping: |w^{l+1}| <= A sqrt(1 - c (eps/A)^{2 theta'})
    const double decr = std::pow(eps / A, 2.0 * theta_prime);
    if (decr > 0.0) {
      step.fitted_c =
          (1.0 - std::pow(step.next_residual_norm / A, 2)) / decr;
      step.predicted_next_norm =
          have_c ? A * std::sqrt(std::max(0.0, 1.0 - running_c * decr))
                 : std::numeric_limits<double>::quiet_NaN();
      running_c = have_c ? std::min(running_c, step.fitted_c) : step.fitted_c;
      have_c = true;
    }
    res.steps.push_back(step);
    res.profiles.push_back(std::move(prof));
    w = std::move(w_next);
  }
  res.reached_max_profiles = true;
  res.residual = w;
  res.final_strichartz =
      w.l2_norm() == 0.0 ? 0.0 : spacetime_norm(w, params, deriv, pS, quad).value;
  return res;
}

WeakLimitTable weak_limit_probe(const std::vector<SymmetryParams>& a_sched,
                                const std::vector<SymmetryParams>& b_sched,
                                const Field& phi, const std::vector<Field>& testers) {
  if (a_sched.size() != b_sched.size())
    throw schema_error("weak limit probe schedules must have equal length");
  WeakLimitTable table;
  for (std::size_t n = 0; n < a_sched.size(); ++n) {
    try {
      Field moved = apply_symmetry(phi, a_sched[n]);
      Field pulled = invert_symmetry(moved, b_sched[n]);
      std::vector<cd> row(testers.size());
      for (std::size_t t = 0; t < testers.size(); ++t)
        row[t] = inner_product(pulled, testers[t]);
      table.rows.push_back(std::move(row));
      ++table.valid_entries;
    } catch (const resolution_error&) {
      table.truncated = true;
      break;
    }
  }
  return table;
}

}  // namespace biharm
