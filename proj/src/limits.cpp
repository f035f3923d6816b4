#include "biharm/limits.hpp"

#include <algorithm>
#include <cmath>

namespace biharm {

DecaySchedule DecaySchedule::build(std::string name, std::string tag, int K,
                                   const std::function<SymmetryParams(int)>& gen) {
  DecaySchedule s;
  s.name = std::move(name);
  s.divergence_tag = std::move(tag);
  for (int n = 0; n < K; ++n) s.entries.push_back(gen(n));
  return s;
}

double EnvelopeFn::value(double s, double abs_y) const {
  const double rate = 0.5 * d;
  if (abs_y >= branch_ratio * std::abs(s))
    return C * std::pow(1.0 + abs_y, -rate);
  return C * std::pow(1.0 + std::abs(s), -rate);
}

double EnvelopeFn::lp_norm(double s_max, double y_max, int samples) const {
  const double p = 2.0 * (d + 2.0) / d;
  const double ds = 2.0 * s_max / samples;
  const double dy = y_max / samples;
  const double sphere = d == 2 ? 2.0 * pi : 4.0 * pi;
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = -s_max + (i + 0.5) * ds;
    double inner = 0.0;
    for (int j = 0; j < samples; ++j) {
      const double r = (j + 0.5) * dy;
      inner += std::pow(value(s, r), p) * std::pow(r, d - 1) * dy;
    }
    acc += sphere * inner * ds;
  }
  return std::pow(acc, 1.0 / p);
}

EnvelopeCheckResult envelope_check(const Field& psi, const ModelParams& params,
                                   const vecd& a, const std::vector<double>& sample_times) {
  const GridSpec& g = psi.grid();
  const double rho = psi.spectral_radius(1e-8);
  const double alen = norm(a);
  if (alen != 0.0 && alen < 4.0 * rho)
    throw schema_error("envelope hypothesis |a| >= 4 x spectral radius violated");
  Field moved = alen == 0.0 ? psi : modulate(psi, a);
  const double s_deriv = static_cast<double>(g.dim) / (g.dim + 2);
  auto weight = fractional_weight_table(g, params, s_deriv, &moved.spectrum());
  std::vector<cd> wf(weight.size());
  for (std::size_t i = 0; i < wf.size(); ++i) wf[i] = weight[i] * moved.spectrum()[i];
  EvolutionSampler sampler(g, std::move(wf),
                           phase_table(g, params, PropagatorSpec::fourth_order()));

  // a = 0 runs on the (1 + mu) normalization, a != 0 on (2|a|^2 + mu)
  const double rate = alen == 0.0 ? 1.0 + params.mu : 2.0 * alen * alen + params.mu;
  const double drift_rate = alen == 0.0 ? 0.0 : 4.0 * alen * alen + 2.0 * params.mu;
  const double amp = std::pow(rate, 0.5 * g.dim / (g.dim + 2.0));
  EnvelopeCheckResult out;
  out.branch_ratio = 100.0 * std::max(1.0, rho);
  EnvelopeFn env{1.0, out.branch_ratio, g.dim};

  GridTables tab(g);
  const double L = g.box_length;
  struct Sample { double s, abs_y, absv; };
  std::vector<Sample> flat_samples;
  std::vector<double> sup_abs(sample_times.size(), 0.0);
  std::vector<double> track_err;
  int m[3] = {0, 0, 0};
  for (std::size_t ti = 0; ti < sample_times.size(); ++ti) {
    const double t = sample_times[ti];
    const auto& u = sampler.sample(t);
    double best = 0.0;
    std::size_t best_flat = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double av = std::abs(u[i]);
      if (av > best) { best = av; best_flat = i; }
      g.axis_indices(i, m);
      double y2 = 0.0;
      for (int ax = 0; ax < g.dim; ++ax) {
        double y = tab.coord[m[ax]] + drift_rate * a[ax] * t;
        y -= L * std::round(y / L);  // nearest periodic image
        y2 += y * y;
      }
      flat_samples.push_back({rate * t, std::sqrt(y2), av});
    }
    sup_abs[ti] = best;
    // peak tracking where the predicted drift is resolvable and unambiguous
    if (alen > 0.0 && t != 0.0) {
      vecd pred(g.dim), found(g.dim);
      double dlen = 0.0;
      for (int ax = 0; ax < g.dim; ++ax) {
        pred[ax] = -drift_rate * a[ax] * t;
        dlen += pred[ax] * pred[ax];
      }
      dlen = std::sqrt(dlen);
      if (dlen >= 2.0 * g.spacing() && dlen <= L / 4.0) {
        g.axis_indices(best_flat, m);
        double err2 = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) {
          double dxa = tab.coord[m[ax]] - pred[ax];
          dxa -= L * std::round(dxa / L);
          err2 += dxa * dxa;
        }
        track_err.push_back(std::sqrt(err2) / dlen);
      }
    }
  }
  for (double e : track_err)
    out.peak_track_max_rel_err = std::max(out.peak_track_max_rel_err, e);

  // minimal constant making the bound hold on the sample set
  double C = 0.0;
  for (const Sample& s : flat_samples)
    C = std::max(C, s.absv / (amp * env.value(s.s, s.abs_y)));
  out.fitted_C = C;
  for (const Sample& s : flat_samples)
    if (s.absv > C * amp * env.value(s.s, s.abs_y) * (1.0 + 1e-12)) ++out.violations_fitted;
  // coarse pass: every fourth time sample
  double Cc = 0.0;
  for (std::size_t ti = 0; ti < sample_times.size(); ti += 4) {
    const std::size_t base = ti * g.npoints();
    for (std::size_t i = 0; i < g.npoints(); ++i) {
      const Sample& s = flat_samples[base + i];
      Cc = std::max(Cc, s.absv / (amp * env.value(s.s, s.abs_y)));
    }
  }
  out.coarse_C = Cc;
  for (const Sample& s : flat_samples)
    if (s.absv > 1.5 * Cc * amp * env.value(s.s, s.abs_y)) ++out.violations_coarse;

  // decay slope of sup_x |v| against (1 + |s|)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t ti = 0; ti < sample_times.size(); ++ti) {
    const double s = rate * std::abs(sample_times[ti]);
    if (s < 1.0 || sup_abs[ti] <= 0.0) continue;
    const double x = std::log1p(s), y = std::log(sup_abs[ti]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  if (cnt >= 3) {
    const double det = cnt * sxx - sx * sx;
    if (std::abs(det) > 1e-30) out.decay_slope = (cnt * sxy - sx * sy) / det;
  }
  return out;
}

std::vector<OrthDecayRow> orthogonality_decay(const Field& phiJ, const Field& phiK,
                                              const DecaySchedule& schedJ,
                                              const DecaySchedule& schedK,
                                              const ModelParams& params, double p,
                                              const TimeQuadrature& quad) {
  if (schedJ.entries.size() != schedK.entries.size())
    throw schema_error("orthogonality decay schedules must have equal length");
  std::vector<OrthDecayRow> rows;
  for (std::size_t n = 0; n < schedJ.entries.size(); ++n) {
    OrthDecayRow row;
    row.n = static_cast<int>(n);
    row.divergence_total =
        orthogonality_divergence(schedJ.entries[n], schedK.entries[n]).total();
    try {
      row.value =
          product_norm(phiJ, schedJ.entries[n], phiK, schedK.entries[n], params, p, quad)
              .value;
      rows.push_back(row);
    } catch (const resolution_error&) {
      row.valid = false;
      rows.push_back(row);
      break;
    }
  }
  return rows;
}

namespace {

struct KindSetup {
  double mu = 1.0;          // model branch of the direct wave
  double rate = 1.0;        // matched reduced time: tau = rate * t
  double K = 1.0;           // direct_core = K * reduced(matched)
  bool weighted_profile = false;  // reduced acts on |grad|^s phi (kind 47)
};

// quartic dispersion and its Taylor pieces at the carrier b
struct CarrierPhases {
  std::vector<double> full;    // P(xi) = |xi|^4 + mu |xi|^2
  std::vector<double> comp;    // comparison phase
  std::vector<double> wdir;    // direct weight (mu + |xi|^2)^{s/2}
  std::vector<double> wcomp;   // comparison weight (constant or |xi|^s)
};

CarrierPhases carrier_phases(const GridSpec& g, LimitKind kind, const vecd& b, double h) {
  CarrierPhases out;
  const int d = g.dim;
  const double s = static_cast<double>(d) / (d + 2);
  const double mu = (kind == LimitKind::L43_46) ? 0.0 : 1.0;
  auto xi2 = freq_norm2_table(g);
  GridTables tab(g);
  const std::size_t n = g.npoints();
  out.full.resize(n);
  out.comp.resize(n);
  out.wdir.resize(n);
  out.wcomp.resize(n);
  const double b2 = norm2(b);
  const double Pb = b2 * b2 + mu * b2;
  vecd gradP(d);
  for (int a = 0; a < d; ++a) gradP[a] = (4.0 * b2 + 2.0 * mu) * b[a];
  int m[3] = {0, 0, 0};
  vecd xi(d), w(d);
  for (std::size_t i = 0; i < n; ++i) {
    g.axis_indices(i, m);
    for (int a = 0; a < d; ++a) xi[a] = tab.freq[m[a]];
    const double q2 = xi2[i];
    out.full[i] = q2 * q2 + mu * q2;
    out.wdir[i] = std::pow(mu + q2, 0.5 * s);
    switch (kind) {
      case LimitKind::L43_46:
      case LimitKind::L44_49:
      case LimitKind::L44_50: {
        double bw = 0.0, w2 = 0.0;
        for (int a = 0; a < d; ++a) {
          w[a] = xi[a] - b[a];
          bw += b[a] * w[a];
          w2 += w[a] * w[a];
        }
        out.comp[i] = Pb + dot(gradP, w) + (2.0 * b2 + mu) * w2 + 4.0 * bw * bw;
        out.wcomp[i] = kind == LimitKind::L43_46 ? std::pow(b2, 0.5 * s)
                                                 : std::pow(1.0 + b2, 0.5 * s);
        break;
      }
      case LimitKind::L44_47:
        out.comp[i] = q2 * q2;                  // e^{it Delta^2}
        out.wcomp[i] = std::pow(q2, 0.5 * s);   // |grad|^s
        break;
      case LimitKind::L44_48:
        out.comp[i] = q2;  // e^{-it Delta}
        out.wcomp[i] = 1.0;
        break;
    }
  }
  (void)h;
  return out;
}

KindSetup kind_setup(LimitKind kind, const vecd& b, double h, int d) {
  KindSetup ks;
  const double s = static_cast<double>(d) / (d + 2);
  const double b2 = norm2(b);
  switch (kind) {
    case LimitKind::L43_46:
      ks.mu = 0.0;
      ks.rate = b2;
      ks.K = 1.0;
      break;
    case LimitKind::L44_47:
      ks.rate = 1.0 / (h * h * h * h);
      ks.K = 1.0;
      ks.weighted_profile = true;
      break;
    case LimitKind::L44_48:
      ks.rate = 1.0 / (h * h);
      ks.K = 1.0;
      break;
    case LimitKind::L44_49:
    case LimitKind::L44_50:
      ks.rate = 1.0 / (h * h);
      ks.K = std::pow(1.0 + b2, 0.5 * s);
      break;
  }
  return ks;
}

void validate_kind(LimitKind kind, const SymmetryParams& par) {
  const double xlen = norm(par.xi);
  switch (kind) {
    case LimitKind::L43_46:
      if (par.h != 1.0) throw schema_error("L43_46 expects h = 1 with |a_n| -> inf");
      if (xlen == 0.0) throw schema_error("L43_46 expects a nonzero carrier a_n");
      break;
    case LimitKind::L44_47:
      if (xlen != 0.0) throw schema_error("L44_47 expects xi_n = 0");
      if (par.h >= 1.0) throw schema_error("L44_47 expects h_n -> 0");
      break;
    case LimitKind::L44_48:
      if (xlen != 0.0) throw schema_error("L44_48 expects xi_n = 0");
      if (par.h <= 1.0) throw schema_error("L44_48 expects h_n -> inf");
      break;
    case LimitKind::L44_49:
      if (xlen == 0.0 || xlen > 4.0)
        throw schema_error("L44_49 expects 0 < |xi_n| <~ 1 with |h_n xi_n| -> inf");
      break;
    case LimitKind::L44_50:
      if (xlen <= 4.0) throw schema_error("L44_50 expects |xi_n| -> inf");
      break;
  }
}

struct ReducedSymbols {
  std::vector<double> bracket;  // PHI
  std::vector<double> evolve;   // PSI
};

ReducedSymbols reduced_symbols(const GridSpec& g, ReducedKind kind, const vecd& b,
                               double h) {
  ReducedSymbols out;
  auto xi2 = freq_norm2_table(g);
  GridTables tab(g);
  const std::size_t n = g.npoints();
  out.bracket.resize(n);
  out.evolve.resize(n);
  const double b2 = norm2(b);
  const int d = g.dim;
  int m[3] = {0, 0, 0};
  vecd eta(d);
  for (std::size_t i = 0; i < n; ++i) {
    g.axis_indices(i, m);
    for (int a = 0; a < d; ++a) eta[a] = tab.freq[m[a]];
    const double e2 = xi2[i];
    const double be = dot(b, eta);
    switch (kind) {
      case ReducedKind::R57:
        out.bracket[i] = (4.0 * be * e2 + e2 * e2) / b2;
        out.evolve[i] = 2.0 * e2 + 4.0 * be * be / b2;
        break;
      case ReducedKind::R58:
        out.bracket[i] = h * h * e2;
        out.evolve[i] = e2 * e2;
        break;
      case ReducedKind::R59:
        out.bracket[i] = e2 * e2 / (h * h);
        out.evolve[i] = e2;
        break;
      case ReducedKind::R60:
      case ReducedKind::R61:
        out.bracket[i] = 4.0 * be * e2 / h + e2 * e2 / (h * h);
        out.evolve[i] = (2.0 * b2 + 1.0) * e2 + 4.0 * be * be;
        break;
    }
  }
  return out;
}

ReducedKind reduced_of(LimitKind kind) {
  switch (kind) {
    case LimitKind::L43_46: return ReducedKind::R57;
    case LimitKind::L44_47: return ReducedKind::R58;
    case LimitKind::L44_48: return ReducedKind::R59;
    case LimitKind::L44_49: return ReducedKind::R60;
    case LimitKind::L44_50: return ReducedKind::R61;
  }
  throw schema_error("unknown limit kind");
}

double lp_value(const TimeQuadrature& quad, const std::vector<double>& G, double p) {
  double I = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i) I += quad.weights[i] * G[i];
  return std::pow(std::max(I, 0.0), 1.0 / p);
}

}  // namespace

std::vector<DeficitRow> limit_deficit(LimitKind kind, const Field& phi,
                                      const DecaySchedule& schedule,
                                      const ModelParams& params,
                                      const TimeQuadrature& quad) {
  quad.validate();
  const GridSpec& g = phi.grid();
  const int d = g.dim;
  if (params.dim != d) throw schema_error("limit deficit dimension mismatch");
  const double p = 2.0 * (d + 2.0) / d;
  const double s = static_cast<double>(d) / (d + 2);
  const double vol = g.cell_volume();
  const ReducedKind rk = reduced_of(kind);

  std::vector<DeficitRow> rows;
  for (std::size_t n = 0; n < schedule.entries.size(); ++n) {
    const SymmetryParams& par = schedule.entries[n];
    validate_kind(kind, par);
    DeficitRow row;
    row.n = static_cast<int>(n);
    try {
      SymmetryDiagnostics diag;
      SymmetryParams packet = par;
      packet.mu = (kind == LimitKind::L43_46) ? 0.0 : 1.0;
      packet.t0 = 0.0;
      packet.x0.assign(d, 0.0);
      Field G = apply_symmetry(phi, packet, &diag);
      const vecd b = diag.modulation_applied;
      row.parameter = (kind == LimitKind::L44_47 || kind == LimitKind::L44_48)
                          ? par.h
                          : norm(b);
      CarrierPhases ph = carrier_phases(g, kind, b, par.h);
      KindSetup ks = kind_setup(kind, b, par.h, d);

      // normalization column: |(1 - wcomp/wdir) G|_2
      double nd = 0.0;
      for (std::size_t i = 0; i < G.spectrum().size(); ++i) {
        const double r = ph.wdir[i] > 0.0 ? 1.0 - ph.wcomp[i] / ph.wdir[i] : 0.0;
        nd += r * r * std::norm(G.spectrum()[i]) * ph.wdir[i] * ph.wdir[i];
      }
      row.normalization_deficit = std::sqrt(nd / std::pow(g.box_length, d));

      // reduced profile: raw phi, or |grad|^s phi for the h->0 branch
      std::vector<cd> red_spec(phi.spectrum());
      if (ks.weighted_profile) {
        auto xi2 = freq_norm2_table(g);
        for (std::size_t i = 0; i < red_spec.size(); ++i)
          red_spec[i] *= std::pow(xi2[i], 0.5 * s);
      }
      ReducedSymbols sym = reduced_symbols(g, rk, b, par.h);

      const std::size_t npts = g.npoints();
      std::vector<cd> spec(npts), u(npts);
      std::vector<double> Gdef(quad.nodes.size()), Gcomp(quad.nodes.size()),
          Gcore(quad.nodes.size()), Gred(quad.nodes.size());
      for (std::size_t node = 0; node < quad.nodes.size(); ++node) {
        const double t = quad.nodes[node];
        const double tau = ks.rate * t;
        // deficit field
        for (std::size_t i = 0; i < npts; ++i)
          spec[i] = (ph.wdir[i] * std::polar(1.0, t * ph.full[i]) -
                     ph.wcomp[i] * std::polar(1.0, t * ph.comp[i])) *
                    G.spectrum()[i];
        fft::inverse(g, spec.data(), u.data());
        Gdef[node] = lp_power_sum(u, p, vol);
        // comparison wave
        for (std::size_t i = 0; i < npts; ++i)
          spec[i] = ph.wcomp[i] * std::polar(1.0, t * ph.comp[i]) * G.spectrum()[i];
        fft::inverse(g, spec.data(), u.data());
        Gcomp[node] = lp_power_sum(u, p, vol);
        // core deficit: both sides carry the comparison weight
        for (std::size_t i = 0; i < npts; ++i)
          spec[i] = ph.wcomp[i] *
                    (std::polar(1.0, t * ph.full[i]) - std::polar(1.0, t * ph.comp[i])) *
                    G.spectrum()[i];
        fft::inverse(g, spec.data(), u.data());
        Gcore[node] = lp_power_sum(u, p, vol);
        // reduced difference multiplier at the matched time
        for (std::size_t i = 0; i < npts; ++i)
          spec[i] = (std::polar(1.0, tau * (sym.bracket[i] + sym.evolve[i])) -
                     std::polar(1.0, tau * sym.evolve[i])) *
                    red_spec[i];
        fft::inverse(g, spec.data(), u.data());
        Gred[node] = lp_power_sum(u, p, vol);
      }
      row.direct_deficit = lp_value(quad, Gdef, p);
      row.comparison_norm = lp_value(quad, Gcomp, p);
      const double core = lp_value(quad, Gcore, p);
      // the reduced value carries its own time measure: tau = rate * t
      // rescales the quadrature weights by rate
      const double reduced_matched =
          lp_value(quad, Gred, p) * std::pow(ks.rate, 1.0 / p);
      row.reduced_value = reduced_matched;
      row.equivalence_gap =
          std::abs(core - ks.K * reduced_matched) / std::max(row.comparison_norm, 1e-300);
      rows.push_back(row);
    } catch (const resolution_error&) {
      row.valid = false;
      rows.push_back(row);
      break;
    }
  }
  return rows;
}

double reduced_form(ReducedKind kind, const Field& phi, const SymmetryParams& par,
                    const ModelParams& params, const TimeQuadrature& quad) {
  quad.validate();
  const GridSpec& g = phi.grid();
  const int d = g.dim;
  if (params.dim != d) throw schema_error("reduced form dimension mismatch");
  const double p = 2.0 * (d + 2.0) / d;
  vecd b(par.xi.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = par.h * par.xi[i];
  if ((kind == ReducedKind::R57 || kind == ReducedKind::R60 || kind == ReducedKind::R61) &&
      norm2(b) == 0.0)
    throw schema_error("reduced form needs a nonzero carrier");
  ReducedSymbols sym = reduced_symbols(g, kind, b, par.h);
  const std::size_t npts = g.npoints();
  std::vector<cd> spec(npts), u(npts);
  std::vector<double> G(quad.nodes.size());
  const double vol = g.cell_volume();
  for (std::size_t node = 0; node < quad.nodes.size(); ++node) {
    const double t = quad.nodes[node];
    for (std::size_t i = 0; i < npts; ++i)
      spec[i] = (std::polar(1.0, t * (sym.bracket[i] + sym.evolve[i])) -
                 std::polar(1.0, t * sym.evolve[i])) *
                phi.spectrum()[i];
    fft::inverse(g, spec.data(), u.data());
    G[node] = lp_power_sum(u, p, vol);
  }
  double I = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i) I += quad.weights[i] * G[i];
  return std::pow(std::max(I, 0.0), 1.0 / p);
}

}  // namespace biharm
