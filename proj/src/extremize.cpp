#include "biharm/extremize.hpp"

#include <algorithm>
#include <cmath>

namespace biharm {

double strichartz_ratio(const Field& f, const ModelParams& params,
                        const TimeQuadrature& quad, const PropagatorSpec& prop) {
  const double l2 = f.l2_norm();
  if (l2 == 0.0) throw degeneracy_error("ratio of the zero field");
  const double p = 2.0 * (params.dim + 2.0) / params.dim;
  const double deriv = prop.kind == PropKind::fourth_order
                           ? static_cast<double>(params.dim) / (params.dim + 2)
                           : 0.0;
  return spacetime_norm(f, params, deriv, p, quad, prop).value / l2;
}

ExtremizerReport ascend(const Field& init, const ModelParams& params,
                        const TimeQuadrature& quad, int iters, double tol,
                        const PropagatorSpec& prop) {
  quad.validate();
  const GridSpec& g = init.grid();
  const double l2 = init.l2_norm();
  if (l2 == 0.0) throw degeneracy_error("ascend from the zero field");
  const double p = 2.0 * (params.dim + 2.0) / params.dim;
  const double deriv = prop.kind == PropKind::fourth_order
                           ? static_cast<double>(params.dim) / (params.dim + 2)
                           : 0.0;
  ExtremizerReport rep;
  rep.propagator_tag =
      prop.kind == PropKind::fourth_order ? "fourth_order_mu" : "schrodinger";

  auto weight = fractional_weight_table(g, params, deriv, &init.spectrum());
  auto phase = phase_table(g, params, prop);
  const std::size_t npts = g.npoints();
  const double vol = g.cell_volume();

  std::vector<cd> F(init.spectrum());
  for (cd& v : F) v *= cd(1.0 / l2, 0.0);

  std::vector<cd> tmp(npts), u(npts), V(npts), acc(npts);
  const double pm2_half = 0.5 * (p - 2.0);

  auto spread_check = [&](const std::vector<cd>& spec) {
    double peak = 0.0;
    for (const cd& v : spec) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return false;
    std::size_t n = 0;
    for (const cd& v : spec)
      if (std::abs(v) > 1e-6 * peak && ++n >= 4) return true;
    return false;
  };
  if (!spread_check(F)) rep.degenerate = true;

  for (int it = 0; it <= iters; ++it) {
    // one pass: ratio of the current iterate and the adjoint image
    std::fill(acc.begin(), acc.end(), cd(0.0, 0.0));
    double I = 0.0;
    for (std::size_t node = 0; node < quad.nodes.size(); ++node) {
      const double t = quad.nodes[node];
      const double wq = quad.weights[node];
      for (std::size_t i = 0; i < npts; ++i)
        tmp[i] = weight[i] * std::polar(1.0, t * phase[i]) * F[i];
      fft::inverse(g, tmp.data(), u.data());
      double Gi = 0.0;
      for (std::size_t i = 0; i < npts; ++i) {
        const double a2 = std::norm(u[i]);
        const double wv = (p == 4.0) ? a2 : std::pow(a2, pm2_half);
        Gi += wv * a2;  // |u|^p = |u|^{p-2} |u|^2
        V[i] = wv * u[i];
      }
      I += wq * Gi * vol;
      fft::forward(g, V.data(), tmp.data());
      for (std::size_t i = 0; i < npts; ++i)
        acc[i] += wq * weight[i] * std::polar(1.0, -t * phase[i]) * tmp[i];
    }
    const double ratio = std::pow(std::max(I, 0.0), 1.0 / p);  // |F|_2 = 1
    if (!rep.iterates.empty() && ratio < rep.iterates.back() * (1.0 - 1e-9))
      rep.monotone = false;
    rep.iterates.push_back(ratio);
    if (it == iters) break;

    double an = 0.0;
    for (const cd& v : acc) an += std::norm(v);
    an = std::sqrt(an / std::pow(g.box_length, g.dim));
    if (an < 1e-14) throw degeneracy_error("ascent iterate collapsed to zero");
    for (std::size_t i = 0; i < npts; ++i) F[i] = acc[i] / an;
    if (!spread_check(F)) rep.degenerate = true;

    // converged when the last 5 steps moved the ratio by < tol relatively
    const std::size_t k = rep.iterates.size();
    if (k >= 6) {
      bool quiet = true;
      for (std::size_t j = k - 5; j < k; ++j)
        if (std::abs(rep.iterates[j] - rep.iterates[j - 1]) >
            tol * std::abs(rep.iterates[j]))
          quiet = false;
      if (quiet) {
        rep.converged = true;
        break;
      }
    }
  }
  rep.ratio = rep.iterates.back();
  rep.f_star = Field::from_spectrum(g, F);
  return rep;
}

double lower_bound_constant(int d) {
  if (d < 2) throw schema_error("lower bound constant needs d >= 2");
  return std::pow(3.0, -1.0 / (2.0 * (d + 2))) * std::pow(2.0, -d / (2.0 * (d + 2)));
}

std::vector<TrajectoryRow> comparison_experiment(ComparisonKind kind, const Field& psi,
                                                 const std::vector<SymmetryParams>& schedule,
                                                 const ModelParams& params,
                                                 const TimeQuadrature& quad) {
  const double l2 = psi.l2_norm();
  if (std::abs(l2 - 1.0) > 1e-8)
    throw schema_error("comparison experiment expects a unit-normalized psi");
  std::vector<TrajectoryRow> rows;
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    const SymmetryParams& s = schedule[n];
    TrajectoryRow row;
    row.n = static_cast<int>(n);
    vecd b(s.xi.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = s.h * s.xi[i];
    row.parameter = kind == ComparisonKind::A0_vs_B ? norm(b) : s.h;
    try {
      Field datum;
      ModelParams mp = params;
      switch (kind) {
        case ComparisonKind::A0_vs_B: {
          if (norm(b) == 0.0) {
            datum = apply_symmetry(psi, s);
          } else {
            Field shaped = anisotropic_rescale(psi, AnisotropicScaling::ell(b),
                                               RescaleMode::compose_inverse);
            datum = apply_symmetry(shaped, s);
          }
          mp = ModelParams(0.0, params.dim);
          break;
        }
        case ComparisonKind::A1_vs_B:
        case ComparisonKind::A1_vs_A0: {
          datum = apply_symmetry(psi, s);
          mp = ModelParams(1.0, params.dim);
          break;
        }
      }
      row.ratio = strichartz_ratio(datum, mp, quad);
      rows.push_back(row);
    } catch (const resolution_error&) {
      row.valid = false;
      rows.push_back(row);
      break;
    }
  }
  return rows;
}

}  // namespace biharm
