#include "biharm/refined.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace biharm {

CapDictionary CapDictionary::generate(const GridSpec& g, const ModelParams& p,
                                      const DictionaryOptions& opt) {
  if (opt.annulus_min_log2 > opt.annulus_max_log2)
    throw schema_error("dictionary annulus range is empty");
  CapDictionary dict;
  const double dxi = g.freq_spacing();
  const double nyq = g.nyquist();
  for (int e = opt.annulus_min_log2; e <= opt.annulus_max_log2; ++e) {
    const double annulus = std::ldexp(1.0, e);
    if (annulus / 2.0 > nyq) continue;
    for (int j = 1; j <= opt.max_radius_splits; ++j) {
      const double r = std::ldexp(annulus, -j);
      if (r > opt.cap_diameter_constant * annulus) continue;
      if (r < dxi) continue;
      const int stride = std::max(1, static_cast<int>(std::floor(0.5 * r / dxi)));
      const int kmax = static_cast<int>(std::ceil(2.0 * annulus / dxi));
      const double lo = annulus / 2.0, hi = 2.0 * annulus;
      std::vector<int> k(g.dim, -kmax);
      // round the loop origin onto the stride lattice so dictionaries of
      // different sizes share centers
      auto snap = [&](int v) { return (v / stride) * stride; };
      for (int a = 0; a < g.dim; ++a) k[a] = snap(-kmax);
      bool done = false;
      while (!done) {
        vecd c(g.dim);
        for (int a = 0; a < g.dim; ++a) c[a] = k[a] * dxi;
        const double len = norm(c);
        if (len >= lo && len <= hi) {
          Cap cap(c, r);
          if (cap.admissible(p)) {
            dict.caps.push_back(std::move(cap));
            dict.annulus_of.push_back(annulus);
          }
        }
        int a = g.dim - 1;
        while (a >= 0) {
          k[a] += stride;
          if (k[a] <= kmax) break;
          k[a] = snap(-kmax);
          --a;
        }
        if (a < 0) done = true;
      }
    }
  }
  if (dict.caps.size() > 500000)
    throw schema_error("cap dictionary too large; coarsen the options");
  // deterministic evaluation order
  std::vector<std::size_t> idx(dict.caps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return cap_less(dict.caps[a], dict.caps[b]);
  });
  CapDictionary sorted;
  sorted.caps.reserve(idx.size());
  sorted.annulus_of.reserve(idx.size());
  for (std::size_t i : idx) {
    sorted.caps.push_back(dict.caps[i]);
    sorted.annulus_of.push_back(dict.annulus_of[i]);
  }
  return sorted;
}

bool CapDictionary::covers(const GridSpec& g) const {
  // collect the (annulus, radius) scales present
  struct Scale { double annulus, radius; };
  std::vector<Scale> scales;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    bool seen = false;
    for (const Scale& s : scales)
      if (s.annulus == annulus_of[i] && s.radius == caps[i].radius) { seen = true; break; }
    if (!seen) scales.push_back({annulus_of[i], caps[i].radius});
  }
  GridTables tab(g);
  int m[3] = {0, 0, 0};
  for (const Scale& sc : scales) {
    for (std::size_t f = 0; f < g.npoints(); ++f) {
      g.axis_indices(f, m);
      vecd xi(g.dim);
      for (int a = 0; a < g.dim; ++a) xi[a] = tab.freq[m[a]];
      const double len = norm(xi);
      if (len < sc.annulus / 2.0 || len > 2.0 * sc.annulus) continue;
      bool hit = false;
      for (std::size_t i = 0; i < caps.size() && !hit; ++i) {
        if (caps[i].radius != sc.radius || annulus_of[i] != sc.annulus) continue;
        double d2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
          const double dd = xi[a] - caps[i].center[a];
          d2 += dd * dd;
        }
        hit = d2 <= sc.radius * sc.radius;
      }
      if (!hit) return false;
    }
  }
  return true;
}

double cap_functional(const Field& f, const Cap& kappa, const ModelParams& params,
                      const TimeQuadrature& quad) {
  BumpProfile bump;
  const double e = cap_energy(f, kappa, bump);
  if (e == 0.0) return 0.0;
  const ExponentSet ex = ExponentSet::for_dim(params.dim);
  const double q = ex.q_refined.value();
  Field fk = cap_project(f, kappa, bump, &params);
  const NormReport rep = spacetime_norm(fk, params, 2.0 / q, q, quad);
  return std::pow(kappa.volume(), ex.cap_exponent.value()) * rep.value;
}

RefinedReport refined_supremum(const Field& f, const CapDictionary& dict,
                               const ModelParams& params, const TimeQuadrature& quad,
                               std::vector<std::pair<Cap, double>>* table) {
  if (dict.caps.empty()) throw schema_error("empty cap dictionary");
  const double l2 = f.l2_norm();
  if (l2 == 0.0) throw degeneracy_error("refined supremum of the zero field");
  BumpProfile bump;
  const double prune = 1e-18 * l2 * l2;
  RefinedReport rep;
  bool have = false;
  for (const Cap& cap : dict.caps) {
    double val = 0.0;
    if (cap_energy(f, cap, bump) > prune)
      val = cap_functional(f, cap, params, quad);
    if (table) table->emplace_back(cap, val);
    if (!have || val > rep.cap_functional ||
        (val == rep.cap_functional && cap_less(cap, rep.best_cap))) {
      rep.best_cap = cap;
      rep.cap_functional = val;
      have = true;
    }
  }
  const ExponentSet ex = ExponentSet::for_dim(params.dim);
  rep.strichartz_value =
      spacetime_norm(f, params, ex.deriv_order.value(), ex.p_strichartz.value(), quad)
          .value;
  const double theta = ex.theta.value();
  rep.rhs_bound = std::pow(rep.cap_functional, theta) * std::pow(l2, 1.0 - theta);
  rep.ratio = rep.rhs_bound > 0.0 ? rep.strichartz_value / rep.rhs_bound
                                  : std::numeric_limits<double>::infinity();
  return rep;
}

std::pair<double, double> decoupling_functional(const Field& f, const ModelParams& params,
                                                const TimeQuadrature& quad) {
  const ExponentSet ex = ExponentSet::for_dim(params.dim);
  const double deriv = ex.deriv_order.value();
  const double p = ex.p_strichartz.value();
  const double full = spacetime_norm(f, params, deriv, p, quad).value;
  const int mu_mode = params.mu == 0.0 ? 0 : 1;
  BumpProfile bump;
  const double total = f.l2_norm_sq();
  double sup_shell = 0.0;
  for (double N : lp_shells(f.grid(), mu_mode)) {
    Field shell = littlewood_paley_project(f, N, params, bump);
    if (shell.l2_norm_sq() <= 1e-24 * total) continue;
    sup_shell = std::max(sup_shell,
                         spacetime_norm(shell, params, deriv, p, quad).value);
  }
  return {sup_shell, full};
}

}  // namespace biharm
