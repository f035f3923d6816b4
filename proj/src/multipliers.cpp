#include "biharm/multipliers.hpp"

#include <algorithm>
#include <cmath>

namespace biharm {

std::vector<double> phase_table(const GridSpec& g, const ModelParams& p,
                                const PropagatorSpec& prop) {
  auto xi2 = freq_norm2_table(g);
  std::vector<double> out(xi2.size());
  if (prop.kind == PropKind::fourth_order) {
    for (std::size_t i = 0; i < xi2.size(); ++i)
      out[i] = xi2[i] * xi2[i] + p.mu * xi2[i];
  } else {
    const double s = -static_cast<double>(prop.schrodinger_sign);
    for (std::size_t i = 0; i < xi2.size(); ++i) out[i] = s * xi2[i];
  }
  return out;
}

std::vector<double> fractional_weight_table(const GridSpec& g, const ModelParams& p,
                                            double s, const std::vector<cd>* spectrum) {
  auto xi2 = freq_norm2_table(g);
  std::vector<double> out(xi2.size());
  const bool singular = (p.mu == 0.0 && s < 0.0);
  for (std::size_t i = 0; i < xi2.size(); ++i) {
    const double base = p.mu + xi2[i];
    if (base == 0.0) {
      if (singular && spectrum) {
        double peak = 0.0;
        for (const cd& v : *spectrum) peak = std::max(peak, std::abs(v));
        if (std::abs((*spectrum)[i]) > 1e-13 * peak)
          throw degeneracy_error(
              "singular symbol: mu = 0 with negative order on data carrying a zero mode");
      }
      out[i] = (s > 0.0) ? 0.0 : (s == 0.0 ? 1.0 : 0.0);
    } else {
      out[i] = std::pow(base, 0.5 * s);
    }
  }
  return out;
}

Field apply_multiplier(const Field& f, const std::function<cd(const vecd&)>& symbol) {
  const GridSpec& g = f.grid();
  GridTables tab(g);
  std::vector<cd> out(f.spectrum().size());
  int m[3] = {0, 0, 0};
  vecd xi(g.dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    for (int a = 0; a < g.dim; ++a) xi[a] = tab.freq[m[a]];
    const cd mv = symbol(xi);
    if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
      throw degeneracy_error("multiplier symbol non-finite on the lattice");
    out[i] = mv * f.spectrum()[i];
  }
  return Field::from_spectrum(g, std::move(out));
}

Field apply_multiplier_table(const Field& f, const std::vector<cd>& table) {
  if (table.size() != f.spectrum().size()) throw schema_error("multiplier table size");
  std::vector<cd> out(table.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(table[i].real()) || !std::isfinite(table[i].imag()))
      throw degeneracy_error("multiplier symbol non-finite on the lattice");
    out[i] = table[i] * f.spectrum()[i];
  }
  return Field::from_spectrum(f.grid(), std::move(out));
}

Field apply_phase_table(const Field& f, const std::vector<double>& phase, double t) {
  std::vector<cd> out(f.spectrum().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::polar(1.0, t * phase[i]) * f.spectrum()[i];
  return Field::from_spectrum(f.grid(), std::move(out));
}

Field fractional_derivative(const Field& f, const ModelParams& p, double s) {
  auto w = fractional_weight_table(f.grid(), p, s, &f.spectrum());
  std::vector<cd> out(w.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w[i] * f.spectrum()[i];
  return Field::from_spectrum(f.grid(), std::move(out));
}

Field propagate(const Field& f, const ModelParams& p, double t) {
  return apply_phase_table(f, phase_table(f.grid(), p, PropagatorSpec::fourth_order()), t);
}

Field schrodinger_propagate(const Field& f, double t, int sign) {
  ModelParams p(0.0, f.grid().dim);
  return apply_phase_table(f, phase_table(f.grid(), p, PropagatorSpec::schrodinger(sign)), t);
}

namespace {

bool is_power_of_two(double x) {
  if (x <= 0.0) return false;
  int e;
  return std::frexp(x, &e) == 0.5;
}

}  // namespace

double lp_symbol(double abs_xi, double N, int mu_mode, const BumpProfile& bump) {
  if (mu_mode == 1 && N == 0.0) return bump.radial(2.0 * abs_xi);
  return bump.radial(abs_xi / N) - bump.radial(2.0 * abs_xi / N);
}

Field littlewood_paley_project(const Field& f, double N, const ModelParams& p,
                               const BumpProfile& bump) {
  const int mu_mode = (p.mu == 0.0) ? 0 : 1;
  if (mu_mode == 0) {
    if (!is_power_of_two(N))
      throw schema_error("Littlewood-Paley shell must be dyadic when mu = 0");
  } else {
    if (N != 0.0 && (!is_power_of_two(N) || N < 1.0))
      throw schema_error("Littlewood-Paley shell must be 0 or in 2^N when mu = 1");
  }
  auto xi2 = freq_norm2_table(f.grid());
  std::vector<cd> out(xi2.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = lp_symbol(std::sqrt(xi2[i]), N, mu_mode, bump) * f.spectrum()[i];
  return Field::from_spectrum(f.grid(), std::move(out));
}

std::vector<double> lp_shells(const GridSpec& g, int mu_mode) {
  const double nyq = g.nyquist();
  std::vector<double> shells;
  // largest shell whose cutoff phi(xi/N) is not identically 1 on the lattice
  const int top = static_cast<int>(std::ceil(std::log2(2.0 * nyq))) + 1;
  if (mu_mode == 1) {
    shells.push_back(0.0);
    for (int e = 0; e <= top; ++e) shells.push_back(std::ldexp(1.0, e));
  } else {
    const int bottom = static_cast<int>(std::floor(std::log2(g.freq_spacing()))) - 1;
    for (int e = bottom; e <= top; ++e) shells.push_back(std::ldexp(1.0, e));
  }
  return shells;
}

Field cap_project(const Field& f, const Cap& kappa, const BumpProfile& bump,
                  const ModelParams* check, bool override_admissibility) {
  const GridSpec& g = f.grid();
  if (static_cast<int>(kappa.center.size()) != g.dim)
    throw schema_error("cap dimension does not match grid");
  if (check && !override_admissibility && !kappa.admissible(*check))
    throw schema_error("inadmissible mu-cap: 8r > |center| + sqrt(mu) for " + kappa.str());
  GridTables tab(g);
  std::vector<cd> out(f.spectrum().size());
  int m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double d = tab.freq[m[a]] - kappa.center[a];
      r2 += d * d;
    }
    const double w = bump.radial(std::sqrt(r2) / kappa.radius);
    out[i] = w * f.spectrum()[i];
  }
  return Field::from_spectrum(g, std::move(out));
}

double cap_energy(const Field& f, const Cap& kappa, const BumpProfile& bump) {
  const GridSpec& g = f.grid();
  GridTables tab(g);
  const double lim = 2.0 * kappa.radius;
  double s = 0.0;
  int m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < f.spectrum().size(); ++i) {
    g.axis_indices(i, m);
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double d = tab.freq[m[a]] - kappa.center[a];
      r2 += d * d;
    }
    if (r2 >= lim * lim) continue;
    const double w = bump.radial(std::sqrt(r2) / kappa.radius);
    s += w * w * std::norm(f.spectrum()[i]);
  }
  return s / std::pow(g.box_length, g.dim);
}

}  // namespace biharm
