#include "biharm/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "biharm/multipliers.hpp"

namespace biharm {

bool SymmetryParams::is_identity() const {
  if (h != 1.0 || t0 != 0.0) return false;
  for (double c : xi) if (c != 0.0) return false;
  for (double c : x0) if (c != 0.0) return false;
  return true;
}

namespace {

// exact power-of-two exponent, or throws
int dyadic_exponent(double h) {
  int e;
  if (h <= 0.0 || std::frexp(h, &e) != 0.5)
    throw schema_error("symmetry scale h must be a power of two; got " + std::to_string(h));
  return e - 1;  // h = 2^(e-1)
}

// The band-limit contract protects the 1e-10 isometry promise: content that
// a spreading dilation would push off the lattice must carry a negligible
// L2 fraction.  Returns the largest offending axis index (0 when clean).
int spreading_clip_check(const Field& f, int spread_factor, double mass_tol = 1e-14) {
  const GridSpec& g = f.grid();
  const int N = g.points_per_axis;
  double total = 0.0, clipped = 0.0;
  int worst = 0;
  int m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < f.spectrum().size(); ++i) {
    const double e = std::norm(f.spectrum()[i]);
    total += e;
    g.axis_indices(i, m);
    for (int a = 0; a < g.dim; ++a) {
      const int k = std::abs(g.signed_index(m[a]));
      if (static_cast<long long>(spread_factor) * k >= N / 2) {
        clipped += e;
        worst = std::max(worst, k);
        break;
      }
    }
  }
  if (total == 0.0 || clipped <= mass_tol * total) return 0;
  return worst;
}

Field shift_spectrum(const Field& f, const std::vector<int>& shift,
                     BandLimitPolicy policy) {
  const GridSpec& g = f.grid();
  const int N = g.points_per_axis;
  std::vector<cd> out(g.npoints());
  const auto& F = f.spectrum();
  int m[3] = {0, 0, 0};
  int src[3] = {0, 0, 0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    bool ok = true;
    for (int a = 0; a < g.dim; ++a) {
      const int k = g.signed_index(m[a]) - shift[a];
      if (k < -N / 2 || k >= N / 2) { ok = false; break; }
      src[a] = g.stored_index(k);
    }
    out[i] = ok ? F[g.flat_index(src)] : cd(0.0, 0.0);
  }
  if (policy == BandLimitPolicy::enforce) {
    double total = 0.0, kept = 0.0;
    for (const cd& v : F) total += std::norm(v);
    for (const cd& v : out) kept += std::norm(v);
    if (total > 0.0 && total - kept > 1e-14 * total) {
      int mx = 0;
      for (int c : shift) mx = std::max(mx, std::abs(c));
      int req = N;
      while (mx + N / 2 >= req / 2) req *= 2;
      throw resolution_error("modulation pushes frequency support off the lattice", req);
    }
  }
  return Field::from_spectrum(g, std::move(out));
}

}  // namespace

Field dilate(const Field& f, double h, BandLimitPolicy policy) {
  const int e = dyadic_exponent(h);
  if (e == 0) return f;
  const GridSpec& g = f.grid();
  const int N = g.points_per_axis;
  const int d = g.dim;
  if (e > 0) {
    // h = 2^e >= 2: frequency-side gather, support shrinks by h
    const int hf = 1 << e;
    const double amp = std::pow(static_cast<double>(hf), 0.5 * d);
    const auto& F = f.spectrum();
    std::vector<cd> out(g.npoints());
    int m[3] = {0, 0, 0};
    int src[3] = {0, 0, 0};
    for (std::size_t i = 0; i < out.size(); ++i) {
      g.axis_indices(i, m);
      bool ok = true;
      for (int a = 0; a < d; ++a) {
        const long long k = static_cast<long long>(hf) * g.signed_index(m[a]);
        if (k < -N / 2 || k >= N / 2) { ok = false; break; }
        src[a] = g.stored_index(static_cast<int>(k));
      }
      out[i] = ok ? amp * F[g.flat_index(src)] : cd(0.0, 0.0);
    }
    return Field::from_spectrum(g, std::move(out));
  }
  // h = 2^e < 1: spatial gather, support spreads by 1/h
  const int hf = 1 << (-e);
  if (policy == BandLimitPolicy::enforce) {
    const int worst = spreading_clip_check(f, hf);
    if (worst > 0) {
      int req = N;
      while (static_cast<long long>(hf) * worst >= req / 2) req *= 2;
      throw resolution_error("dilation by " + std::to_string(h) +
                                 " pushes frequency support off the lattice",
                             req);
    }
  }
  const double amp = std::pow(static_cast<double>(hf), 0.5 * d);
  const auto& V = f.values();
  std::vector<cd> out(g.npoints());
  int m[3] = {0, 0, 0};
  int src[3] = {0, 0, 0};
  // x_i / h on the centered lattice: index map i -> hf*i + (1-hf)*N/2.
  // Points mapped outside the box read zero: the box models R^d under the
  // localization budget, and wrapping would plant replicas of the field.
  const long long off = static_cast<long long>(1 - hf) * (N / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      const long long j = static_cast<long long>(hf) * m[a] + off;
      if (j < 0 || j >= N) { inside = false; break; }
      src[a] = static_cast<int>(j);
    }
    out[i] = inside ? amp * V[g.flat_index(src)] : cd(0.0, 0.0);
  }
  return Field::from_values(g, std::move(out));
}

Field translate(const Field& f, const vecd& x0) {
  const GridSpec& g = f.grid();
  if (static_cast<int>(x0.size()) != g.dim) throw schema_error("translation dimension");
  bool zero = true;
  for (double c : x0) if (c != 0.0) zero = false;
  if (zero) return f;
  GridTables tab(g);
  std::vector<cd> out(g.npoints());
  int m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    double ph = 0.0;
    for (int a = 0; a < g.dim; ++a) ph -= tab.freq[m[a]] * x0[a];
    out[i] = std::polar(1.0, ph) * f.spectrum()[i];
  }
  return Field::from_spectrum(g, std::move(out));
}

namespace {

std::vector<int> rounded_modulation(const GridSpec& g, const SymmetryParams& s,
                                    SymmetryDiagnostics* diag) {
  const double dxi = g.freq_spacing();
  std::vector<int> shift(g.dim, 0);
  vecd requested(g.dim, 0.0), applied(g.dim, 0.0);
  double residue2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    requested[a] = s.h * (a < static_cast<int>(s.xi.size()) ? s.xi[a] : 0.0);
    shift[a] = static_cast<int>(std::llround(requested[a] / dxi));
    applied[a] = shift[a] * dxi;
    const double r = requested[a] - applied[a];
    residue2 += r * r;
  }
  if (diag) {
    diag->modulation_requested = requested;
    diag->modulation_applied = applied;
    diag->rounding_residue = std::sqrt(residue2);
  }
  return shift;
}

}  // namespace

namespace {

// g_h M_b phi as one gather: no intermediate field has to represent the
// unscaled modulation.  Frequency side for h >= 1 (support shrinks),
// spatial side with an exact phase for h < 1 (support spreads).
Field modulate_dilate(const Field& phi, int e, const std::vector<int>& kb,
                      BandLimitPolicy policy) {
  const GridSpec& g = phi.grid();
  const int N = g.points_per_axis;
  const int d = g.dim;
  if (e >= 0) {
    const int hf = 1 << e;
    const double amp = std::pow(static_cast<double>(hf), 0.5 * d);
    const auto& F = phi.spectrum();
    std::vector<cd> out(g.npoints());
    int m[3] = {0, 0, 0};
    int src[3] = {0, 0, 0};
    for (std::size_t i = 0; i < out.size(); ++i) {
      g.axis_indices(i, m);
      bool ok = true;
      for (int a = 0; a < d; ++a) {
        const long long k = static_cast<long long>(hf) * g.signed_index(m[a]) - kb[a];
        if (k < -N / 2 || k >= N / 2) { ok = false; break; }
        src[a] = g.stored_index(static_cast<int>(k));
      }
      out[i] = ok ? amp * F[g.flat_index(src)] : cd(0.0, 0.0);
    }
    if (policy == BandLimitPolicy::enforce) {
      double total = 0.0, kept = 0.0;
      for (const cd& v : F) total += std::norm(v);
      for (const cd& v : out) kept += std::norm(v) / (amp * amp);
      if (total > 0.0 && total - kept > 1e-14 * total) {
        int mx = 0;
        for (int c : kb) mx = std::max(mx, std::abs(c));
        int req = N;
        while ((mx + N / 2 + hf - 1) / hf >= req / 2) req *= 2;
        throw resolution_error("modulated dilation pushes content off the lattice", req);
      }
    }
    return Field::from_spectrum(g, std::move(out));
  }
  // h = 2^e < 1: check which source modes would leave the lattice
  const int hf = 1 << (-e);
  if (policy == BandLimitPolicy::enforce) {
    double total = 0.0, clipped = 0.0;
    int worst = 0;
    int m[3] = {0, 0, 0};
    for (std::size_t i = 0; i < phi.spectrum().size(); ++i) {
      const double en = std::norm(phi.spectrum()[i]);
      total += en;
      g.axis_indices(i, m);
      for (int a = 0; a < d; ++a) {
        const long long j =
            static_cast<long long>(hf) * (g.signed_index(m[a]) + kb[a]);
        if (j < -N / 2 || j >= N / 2) {
          clipped += en;
          worst = std::max(worst, std::abs(g.signed_index(m[a]) + kb[a]));
          break;
        }
      }
    }
    if (total > 0.0 && clipped > 1e-14 * total) {
      int req = N;
      while (static_cast<long long>(hf) * worst >= req / 2) req *= 2;
      throw resolution_error("modulated dilation pushes content off the lattice", req);
    }
  }
  const double amp = std::pow(static_cast<double>(hf), 0.5 * d);
  const auto& V = phi.values();
  GridTables tab(g);
  std::vector<cd> out(g.npoints());
  int m[3] = {0, 0, 0};
  int src[3] = {0, 0, 0};
  const long long off = static_cast<long long>(1 - hf) * (N / 2);
  const double dxi = g.freq_spacing();
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    bool inside = true;
    double phase = 0.0;
    for (int a = 0; a < d; ++a) {
      const long long j = static_cast<long long>(hf) * m[a] + off;
      if (j < 0 || j >= N) { inside = false; break; }
      src[a] = static_cast<int>(j);
      // modulation e^{i x (b/h)} evaluated at the sample points
      phase += tab.coord[m[a]] * (kb[a] * dxi * hf);
    }
    out[i] = inside ? amp * std::polar(1.0, phase) * V[g.flat_index(src)] : cd(0.0, 0.0);
  }
  return Field::from_values(g, std::move(out));
}

// inverse of modulate_dilate with the same parameters
Field undo_modulate_dilate(const Field& f, int e, const std::vector<int>& kb,
                           BandLimitPolicy policy) {
  const GridSpec& g = f.grid();
  const int N = g.points_per_axis;
  const int d = g.dim;
  if (e >= 0) {
    // spatial gather with the conjugate phase: M_{-b} g_{1/h}
    const int hf = 1 << e;
    const double amp = std::pow(static_cast<double>(hf), 0.5 * d);
    const auto& V = f.values();
    GridTables tab(g);
    std::vector<cd> out(g.npoints());
    int m[3] = {0, 0, 0};
    int src[3] = {0, 0, 0};
    const long long off = static_cast<long long>(1 - hf) * (N / 2);
    const double dxi = g.freq_spacing();
    for (std::size_t i = 0; i < out.size(); ++i) {
      g.axis_indices(i, m);
      bool inside = true;
      for (int a = 0; a < d; ++a) {
        const long long j = static_cast<long long>(hf) * m[a] + off;
        if (j < 0 || j >= N) { inside = false; break; }
        src[a] = static_cast<int>(j);
      }
      if (!inside) { out[i] = cd(0.0, 0.0); continue; }
      double phase = 0.0;
      for (int a = 0; a < d; ++a) phase -= tab.coord[src[a]] * (kb[a] * dxi);
      out[i] = amp * std::polar(1.0, phase) * V[g.flat_index(src)];
    }
    return Field::from_values(g, std::move(out));
  }
  // h < 1: frequency gather back up
  const int hf = 1 << (-e);
  const double amp = std::pow(static_cast<double>(hf), 0.5 * d);
  const auto& F = f.spectrum();
  std::vector<cd> out(g.npoints());
  int m[3] = {0, 0, 0};
  int src[3] = {0, 0, 0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    bool ok = true;
    for (int a = 0; a < d; ++a) {
      const long long k =
          static_cast<long long>(hf) * g.signed_index(m[a]) + kb[a] * hf -
          kb[a] * hf + static_cast<long long>(hf) * 0;
      // source index: hf * (k_out + kb) ... see modulate_dilate
      const long long ks = static_cast<long long>(hf) * (g.signed_index(m[a]) + kb[a]);
      (void)k;
      if (ks < -N / 2 || ks >= N / 2) { ok = false; break; }
      src[a] = g.stored_index(static_cast<int>(ks));
    }
    out[i] = ok ? amp * F[g.flat_index(src)] : cd(0.0, 0.0);
  }
  (void)policy;
  return Field::from_spectrum(g, std::move(out));
}

}  // namespace

Field apply_symmetry(const Field& phi, const SymmetryParams& s, SymmetryDiagnostics* diag,
                     BandLimitPolicy policy) {
  const GridSpec& g = phi.grid();
  ModelParams mp(s.mu, g.dim);
  const int e = dyadic_exponent(s.h);
  std::vector<int> kb = rounded_modulation(g, s, diag);
  Field out = modulate_dilate(phi, e, kb, policy);
  if (!s.x0.empty()) out = translate(out, s.x0);
  if (s.t0 != 0.0) out = propagate(out, mp, -s.t0);
  return out;
}

Field invert_symmetry(const Field& f, const SymmetryParams& s, SymmetryDiagnostics* diag,
                      BandLimitPolicy policy) {
  const GridSpec& g = f.grid();
  ModelParams mp(s.mu, g.dim);
  const int e = dyadic_exponent(s.h);
  std::vector<int> kb = rounded_modulation(g, s, diag);
  Field out = f;
  if (s.t0 != 0.0) out = propagate(out, mp, s.t0);
  if (!s.x0.empty()) {
    vecd neg(s.x0.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -s.x0[i];
    out = translate(out, neg);
  }
  return undo_modulate_dilate(out, e, kb, policy);
}

OrthogonalityRecord orthogonality_divergence(const SymmetryParams& a,
                                             const SymmetryParams& b) {
  OrthogonalityRecord r;
  r.scale_jk = a.h / b.h;
  r.scale_kj = b.h / a.h;
  const std::size_t d = std::max(a.xi.size(), b.xi.size());
  auto at = [](const vecd& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
  double mg = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double t = a.h * at(a.xi, i) - b.h * at(b.xi, i);
    mg += t * t;
  }
  r.modulation_gap = std::sqrt(mg);
  const double dt = b.t0 - a.t0;
  const double xij2 = norm2(a.xi);
  r.quartic_time = std::abs(dt) / std::pow(a.h, 4);
  r.quadratic_time = std::abs(dt) * (a.mu + 2.0 * xij2) / (a.h * a.h);
  double drift = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double c = at(a.x0, i) - at(b.x0, i) +
                     2.0 * (a.t0 - b.t0) * (2.0 * xij2 + a.mu) * at(a.xi, i);
    drift += c * c;
  }
  r.translation_drift = std::sqrt(drift) / a.h;
  return r;
}

}  // namespace biharm
