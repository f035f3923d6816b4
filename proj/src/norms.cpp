#include "biharm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace biharm {

void NormReport::enforce(bool strict) const {
  if (strict && window_warning)
    throw degeneracy_error("time window too small: tail bound exceeds 10% of the value");
}

EvolutionSampler::EvolutionSampler(const GridSpec& g, std::vector<cd> weighted_spectrum,
                                   std::vector<double> phase)
    : grid_(g), wf_(std::move(weighted_spectrum)), phase_(std::move(phase)),
      tmp_(g.npoints()), u_(g.npoints()) {
  if (wf_.size() != grid_.npoints() || phase_.size() != grid_.npoints())
    throw schema_error("sampler arrays do not match grid");
}

const std::vector<cd>& EvolutionSampler::sample(double t) {
  for (std::size_t i = 0; i < wf_.size(); ++i)
    tmp_[i] = std::polar(1.0, t * phase_[i]) * wf_[i];
  fft::inverse(grid_, tmp_.data(), u_.data());
  return u_;
}

double lp_power_sum(const std::vector<cd>& values, double p, double cell_volume) {
  double s = 0.0;
  if (p == 2.0) {
    for (const cd& v : values) s += std::norm(v);
  } else if (p == 4.0) {
    for (const cd& v : values) { const double a = std::norm(v); s += a * a; }
  } else {
    const double half_p = 0.5 * p;
    for (const cd& v : values) s += std::pow(std::norm(v), half_p);
  }
  return s * cell_volume;
}

double lr_norm(const std::vector<cd>& values, double r, double cell_volume) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (const cd& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  return std::pow(lp_power_sum(values, r, cell_volume), 1.0 / r);
}

namespace {

// least-squares fit of log G ~ log C - beta log(1 + |t|) over the outer
// decade, skipping nodes drowned by the box equidistribution floor
bool fit_tail(const TimeQuadrature& quad, const std::vector<double>& G, double& C,
              double& beta, double plateau) {
  const double lo = quad.t_max / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const double at = std::abs(quad.nodes[i]);
    if (at < lo || G[i] <= 0.0) continue;
    if (plateau > 0.0 && G[i] < 4.0 * plateau) continue;
    const double x = std::log1p(at);
    const double y = std::log(G[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 4) return false;
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-30) return false;
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  beta = -slope;
  C = std::exp(intercept);
  return std::isfinite(beta) && std::isfinite(C);
}

}  // namespace

NormReport assemble_report(const TimeQuadrature& quad, const std::vector<double>& G,
                           double p, double fallback_tail_exponent,
                           double plateau_level) {
  if (G.size() != quad.nodes.size()) throw schema_error("integrand/node count mismatch");
  NormReport rep;
  rep.plateau_level = plateau_level;
  double I = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i) I += quad.weights[i] * G[i];
  rep.quadrature_estimate = std::pow(std::max(I, 0.0), 1.0 / p);
  rep.value = rep.quadrature_estimate;

  if (quad.uniform_simpson && (G.size() - 1) % 4 == 0 && G.size() >= 5) {
    const std::size_t M = G.size() - 1;
    const double dt = 2.0 * quad.t_max / (M / 2);
    double Ic = 0.0;
    for (std::size_t j = 0; j <= M / 2; ++j) {
      double w;
      if (j == 0 || j == M / 2) w = 1.0;
      else if (j % 2 == 1) w = 4.0;
      else w = 2.0;
      Ic += w * dt / 3.0 * G[2 * j];
    }
    rep.refinement_delta = std::abs(rep.value - std::pow(std::max(Ic, 0.0), 1.0 / p));
  }

  if (I > 0.0) {
    double C = 0.0, beta = 0.0;
    bool have = fit_tail(quad, G, C, beta, plateau_level);
    if (!have && fallback_tail_exponent > 0.0) {
      beta = fallback_tail_exponent;
      // pin the constant to the outermost nonzero sample
      for (std::size_t i = 0; i < G.size(); ++i)
        if (G[i] > 0.0)
          C = std::max(C, G[i] * std::pow(1.0 + std::abs(quad.nodes[i]), beta));
      have = C > 0.0;
    }
    if (have) {
      rep.tail_fit_constant = C;
      rep.tail_fit_exponent = beta;
      if (beta > 1.0 + 1e-9) {
        const double tail =
            2.0 * C * std::pow(1.0 + quad.t_max, 1.0 - beta) / (beta - 1.0);
        rep.tail_bound = std::pow(I + tail, 1.0 / p) - rep.value;
      } else {
        rep.tail_divergent = true;
        rep.tail_bound = std::numeric_limits<double>::infinity();
      }
    }
  }
  rep.window_warning = !(rep.tail_bound <= 0.10 * rep.value);
  if (rep.value == 0.0) rep.window_warning = false;
  return rep;
}

namespace {

double plateau_floor(const GridSpec& g, double mass_sq, double p) {
  // complex-gaussian statistics of an equidistributed wave:
  // <|u|^p> = Gamma(p/2 + 1) (mass^2 / L^d)^{p/2}
  const double boxv = std::pow(g.box_length, g.dim);
  return std::tgamma(0.5 * p + 1.0) * std::pow(mass_sq / boxv, 0.5 * p) * boxv;
}

NormReport single_field_norm(const GridSpec& g, std::vector<cd> wf,
                             std::vector<double> phase, double p,
                             const TimeQuadrature& quad, double fallback_beta) {
  double mass_sq = 0.0;
  for (const cd& v : wf) mass_sq += std::norm(v);
  mass_sq /= std::pow(g.box_length, g.dim);
  EvolutionSampler sampler(g, std::move(wf), std::move(phase));
  std::vector<double> G(quad.nodes.size());
  const double vol = g.cell_volume();
  for (std::size_t i = 0; i < G.size(); ++i)
    G[i] = lp_power_sum(sampler.sample(quad.nodes[i]), p, vol);
  return assemble_report(quad, G, p, fallback_beta, plateau_floor(g, mass_sq, p));
}

bool headroom_ok(const GridSpec& g, const std::vector<cd>& spectrum, double p) {
  const double lim = g.nyquist() / std::ceil(0.5 * p);
  double peak = 0.0;
  for (const cd& v : spectrum) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return true;
  auto xi2 = freq_norm2_table(g);
  const double thr = 1e-13 * peak;
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    if (std::abs(spectrum[i]) > thr && xi2[i] > lim * lim) return false;
  return true;
}

}  // namespace

NormReport spacetime_norm(const Field& f, const ModelParams& params, double deriv,
                          double p, const TimeQuadrature& quad,
                          const PropagatorSpec& prop) {
  if (p < 1.0) throw schema_error("spacetime norm requires p >= 1");
  quad.validate();
  const GridSpec& g = f.grid();
  auto weight = fractional_weight_table(g, params, deriv, &f.spectrum());
  std::vector<cd> wf(weight.size());
  for (std::size_t i = 0; i < wf.size(); ++i) wf[i] = weight[i] * f.spectrum()[i];
  const bool headroom = headroom_ok(g, wf, p);
  const double fallback =
      quad.tail_exponent > 0.0 ? quad.tail_exponent : 0.5 * g.dim * (p - 2.0);
  NormReport rep = single_field_norm(g, std::move(wf), phase_table(g, params, prop), p,
                                     quad, fallback);
  rep.aliasing_headroom_ok = headroom;
  return rep;
}

NormReport mixed_norm(const Field& f, const ModelParams& params, double q, double r,
                      const TimeQuadrature& quad) {
  const int d = params.dim;
  if (!(q >= 2.0) || !(r >= 2.0))
    throw schema_error("mixed norm requires 2 <= q, r");
  if (q == 2.0 && std::isinf(r))
    throw schema_error("mixed norm pair (2, inf) is excluded");
  const double defect = 2.0 / q + (std::isinf(r) ? 0.0 : d / r) - 0.5 * d;
  if (std::abs(defect) > 1e-12)
    throw schema_error("inadmissible (q, r): 2/q + d/r - d/2 = " + std::to_string(defect));
  quad.validate();
  const GridSpec& g = f.grid();
  auto weight = fractional_weight_table(g, params, 2.0 / q, &f.spectrum());
  std::vector<cd> wf(weight.size());
  for (std::size_t i = 0; i < wf.size(); ++i) wf[i] = weight[i] * f.spectrum()[i];
  double mass_sq = 0.0;
  for (const cd& v : wf) mass_sq += std::norm(v);
  mass_sq /= std::pow(g.box_length, g.dim);
  const double plateau =
      std::isinf(r) ? 0.0 : std::pow(plateau_floor(g, mass_sq, r), q / r);
  EvolutionSampler sampler(g, std::move(wf), phase_table(g, params, PropagatorSpec::fourth_order()));
  std::vector<double> G(quad.nodes.size());
  const double vol = g.cell_volume();
  for (std::size_t i = 0; i < G.size(); ++i) {
    const double lr = lr_norm(sampler.sample(quad.nodes[i]), r, vol);
    G[i] = std::pow(lr, q);
  }
  NormReport rep = assemble_report(quad, G, q, quad.tail_exponent, plateau);
  rep.aliasing_headroom_ok =
      std::isinf(r) || headroom_ok(g, f.spectrum(), r);
  return rep;
}

namespace {

NormReport pair_product_norm(const GridSpec& g, std::vector<cd> wfA, std::vector<cd> wfB,
                             const std::vector<double>& phase, double p,
                             const TimeQuadrature& quad, double fallback_beta) {
  const double boxv = std::pow(g.box_length, g.dim);
  double ma = 0.0, mb = 0.0;
  for (const cd& v : wfA) ma += std::norm(v);
  for (const cd& v : wfB) mb += std::norm(v);
  ma /= boxv; mb /= boxv;
  const double gam = std::tgamma(0.5 * p + 1.0);
  const double plateau = gam * gam * std::pow(ma * mb / (boxv * boxv), 0.5 * p) * boxv;
  EvolutionSampler sA(g, std::move(wfA), phase);
  EvolutionSampler sB(g, std::move(wfB), phase);
  std::vector<double> G(quad.nodes.size());
  const double vol = g.cell_volume();
  const double half_p = 0.5 * p;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const auto& uA = sA.sample(quad.nodes[i]);
    const auto& uB = sB.sample(quad.nodes[i]);
    double s = 0.0;
    for (std::size_t j = 0; j < uA.size(); ++j)
      s += std::pow(std::norm(uA[j]) * std::norm(uB[j]), half_p);
    G[i] = s * vol;
  }
  return assemble_report(quad, G, p, fallback_beta, plateau);
}

}  // namespace

NormReport product_norm(const Field& fA, const SymmetryParams& sA, const Field& fB,
                        const SymmetryParams& sB, const ModelParams& params, double p,
                        const TimeQuadrature& quad) {
  if (p < 1.0) throw schema_error("product norm requires p >= 1");
  quad.validate();
  const GridSpec& g = fA.grid();
  if (!(g == fB.grid())) throw schema_error("product norm across grids");
  const double s = static_cast<double>(params.dim) / (params.dim + 2);
  Field uA = apply_symmetry(fA, sA);
  Field uB = apply_symmetry(fB, sB);
  auto wA = fractional_weight_table(g, params, s, &uA.spectrum());
  auto wB = fractional_weight_table(g, params, s, &uB.spectrum());
  std::vector<cd> wfA(wA.size()), wfB(wB.size());
  for (std::size_t i = 0; i < wA.size(); ++i) {
    wfA[i] = wA[i] * uA.spectrum()[i];
    wfB[i] = wB[i] * uB.spectrum()[i];
  }
  // both factors obey the dispersive envelope, so the product integrand
  // decays at twice the single-wave rate
  const double fallback =
      quad.tail_exponent > 0.0 ? quad.tail_exponent : g.dim * (p - 1.0);
  return pair_product_norm(g, std::move(wfA), std::move(wfB),
                           phase_table(g, params, PropagatorSpec::fourth_order()), p, quad,
                           fallback);
}

BilinearReport bilinear_cap_norm(const Field& f, const Cap& k1, const Cap& k2, double p,
                                 const TimeQuadrature& quad) {
  const GridSpec& g = f.grid();
  const int d = g.dim;
  const double threshold = static_cast<double>(d + 3) / (d + 1);
  if (!(p > threshold))
    throw schema_error("bilinear norm requires p > (d+3)/(d+1) = " +
                       std::to_string(threshold));
  quad.validate();
  BilinearReport out;
  {
    vecd sep(k1.center.size());
    for (std::size_t i = 0; i < sep.size(); ++i) sep[i] = k1.center[i] - k2.center[i];
    const double dist = norm(sep);
    const double lo = std::min({2.0 * k1.radius, 2.0 * k2.radius, dist});
    const double hi = std::max({2.0 * k1.radius, 2.0 * k2.radius, dist});
    out.comparability_ok = lo > 0.0 && hi / lo <= 4.0;
  }
  BumpProfile bump;
  Field f1 = cap_project(f, k1, bump);
  Field f2 = cap_project(f, k2, bump);
  ModelParams p0(0.0, d);
  out.norm = pair_product_norm(g, f1.spectrum(), f2.spectrum(),
                               phase_table(g, p0, PropagatorSpec::fourth_order()), p, quad,
                               quad.tail_exponent > 0.0 ? quad.tail_exponent : d * (p - 1.0));
  return out;
}

}  // namespace biharm
