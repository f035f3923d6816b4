#include "biharm/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace biharm {

std::vector<double> freq_norm2_table(const GridSpec& g) {
  GridTables tab(g);
  std::vector<double> out(g.npoints());
  const int N = g.points_per_axis;
  if (g.dim == 2) {
    std::size_t f = 0;
    for (int i = 0; i < N; ++i) {
      const double a = tab.freq[i] * tab.freq[i];
      for (int j = 0; j < N; ++j, ++f) out[f] = a + tab.freq[j] * tab.freq[j];
    }
  } else {
    std::size_t f = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double a = tab.freq[i] * tab.freq[i] + tab.freq[j] * tab.freq[j];
        for (int k = 0; k < N; ++k, ++f) out[f] = a + tab.freq[k] * tab.freq[k];
      }
  }
  return out;
}

void Field::check_finite() const {
  for (const cd& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw degeneracy_error("field contains non-finite values");
}

Field Field::from_values(const GridSpec& g, std::vector<cd> values) {
  g.validate();
  if (values.size() != g.npoints())
    throw schema_error("value array size does not match grid");
  Field f;
  f.grid_ = g;
  f.values_ = std::move(values);
  f.check_finite();
  fft::forward(g, f.values_, f.spectrum_);
  return f;
}

Field Field::from_spectrum(const GridSpec& g, std::vector<cd> spectrum) {
  g.validate();
  if (spectrum.size() != g.npoints())
    throw schema_error("spectrum array size does not match grid");
  Field f;
  f.grid_ = g;
  f.spectrum_ = std::move(spectrum);
  fft::inverse(g, f.spectrum_, f.values_);
  f.check_finite();
  return f;
}

Field Field::zero(const GridSpec& g) {
  return from_values(g, std::vector<cd>(g.npoints()));
}

double Field::l2_norm_sq() const {
  double s = 0.0;
  for (const cd& v : values_) s += std::norm(v);
  return s * grid_.cell_volume();
}

double Field::l2_norm() const { return std::sqrt(l2_norm_sq()); }

double Field::l2_norm_spectral() const {
  double s = 0.0;
  for (const cd& v : spectrum_) s += std::norm(v);
  return std::sqrt(s / std::pow(grid_.box_length, grid_.dim));
}

bool Field::is_zero(double tol) const {
  for (const cd& v : values_)
    if (std::abs(v) > tol) return false;
  return true;
}

double Field::spectral_radius(double rel_tol) const {
  double peak = 0.0;
  for (const cd& v : spectrum_) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const double thr = rel_tol * peak;
  auto xi2 = freq_norm2_table(grid_);
  double r2 = 0.0;
  for (std::size_t i = 0; i < spectrum_.size(); ++i)
    if (std::abs(spectrum_[i]) > thr) r2 = std::max(r2, xi2[i]);
  return std::sqrt(r2);
}

std::size_t Field::spectral_spread(double rel_tol) const {
  double peak = 0.0;
  for (const cd& v : spectrum_) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0;
  const double thr = rel_tol * peak;
  std::size_t n = 0;
  for (const cd& v : spectrum_)
    if (std::abs(v) > thr) ++n;
  return n;
}

double Field::mass_outside_quarter_box() const {
  GridTables tab(grid_);
  const int N = grid_.points_per_axis;
  const double cutoff2 = grid_.box_length * grid_.box_length / 16.0;
  double out = 0.0, total = 0.0;
  int m[3] = {0, 0, 0};
  for (std::size_t f = 0; f < values_.size(); ++f) {
    grid_.axis_indices(f, m);
    double r2 = 0.0;
    for (int a = 0; a < grid_.dim; ++a) r2 += tab.coord[m[a]] * tab.coord[m[a]];
    const double w = std::norm(values_[f]);
    total += w;
    if (r2 > cutoff2) out += w;
  }
  return total > 0.0 ? out / total : 0.0;
}

cd inner_product(const Field& a, const Field& b) {
  if (!(a.grid_ == b.grid_)) throw schema_error("inner product across grids");
  cd s = 0.0;
  for (std::size_t i = 0; i < a.values_.size(); ++i)
    s += a.values_[i] * std::conj(b.values_[i]);
  return s * a.grid_.cell_volume();
}

Field operator+(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw schema_error("field sum across grids");
  std::vector<cd> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] + b.values()[i];
  return Field::from_values(a.grid(), std::move(v));
}

Field operator-(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw schema_error("field difference across grids");
  std::vector<cd> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
  return Field::from_values(a.grid(), std::move(v));
}

Field operator*(const Field& a, cd scale) {
  std::vector<cd> v(a.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * scale;
  return Field::from_values(a.grid(), std::move(v));
}

namespace {

template <class Fn>
Field build_spatial(const GridSpec& g, const vecd& center, bool normalize, Fn&& fn) {
  vecd c = center;
  if (c.empty()) c.assign(g.dim, 0.0);
  if (static_cast<int>(c.size()) != g.dim) throw schema_error("center dimension mismatch");
  GridTables tab(g);
  const int N = g.points_per_axis;
  std::vector<cd> v(g.npoints());
  int m[3] = {0, 0, 0};
  vecd x(g.dim);
  for (std::size_t f = 0; f < v.size(); ++f) {
    g.axis_indices(f, m);
    for (int a = 0; a < g.dim; ++a) {
      // nearest periodic image relative to the center
      double d = tab.coord[m[a]] - c[a];
      d -= g.box_length * std::round(d / g.box_length);
      x[a] = d;
    }
    v[f] = fn(x);
  }
  (void)N;
  Field out = Field::from_values(g, std::move(v));
  if (normalize) {
    const double n = out.l2_norm();
    if (n == 0.0) throw degeneracy_error("cannot normalize zero field");
    out = out * cd(1.0 / n, 0.0);
  }
  return out;
}

double bump_scalar(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double s = r - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

}  // namespace

Field gaussian_field(const GridSpec& g, double sigma, const vecd& center, bool normalize) {
  if (sigma <= 0.0) throw schema_error("gaussian sigma must be positive");
  return build_spatial(g, center, normalize, [sigma](const vecd& x) {
    return cd(std::exp(-norm2(x) / (2.0 * sigma * sigma)), 0.0);
  });
}

Field bump_field(const GridSpec& g, double radius, const vecd& center, bool normalize) {
  if (radius <= 0.0) throw schema_error("bump radius must be positive");
  return build_spatial(g, center, normalize, [radius](const vecd& x) {
    return cd(bump_scalar(norm(x) / radius), 0.0);
  });
}

Field modulate(const Field& f, const vecd& v, vecd* rounded) {
  const GridSpec& g = f.grid();
  if (static_cast<int>(v.size()) != g.dim) throw schema_error("modulation vector dimension");
  const double dxi = g.freq_spacing();
  std::vector<int> shift(g.dim);
  vecd vr(g.dim);
  for (int a = 0; a < g.dim; ++a) {
    shift[a] = static_cast<int>(std::llround(v[a] / dxi));
    vr[a] = shift[a] * dxi;
  }
  if (rounded) *rounded = vr;
  const int N = g.points_per_axis;
  std::vector<cd> out(g.npoints());
  const auto& F = f.spectrum();
  double total = 0.0, clipped = 0.0;
  int m[3] = {0, 0, 0};
  int src[3] = {0, 0, 0};
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    g.axis_indices(idx, m);
    bool ok = true;
    for (int a = 0; a < g.dim; ++a) {
      int k = g.signed_index(m[a]) - shift[a];
      if (k < -N / 2 || k >= N / 2) { ok = false; break; }
      src[a] = g.stored_index(k);
    }
    out[idx] = ok ? F[g.flat_index(src)] : cd(0.0, 0.0);
  }
  for (const cd& v : F) total += std::norm(v);
  for (const cd& v : out) clipped += std::norm(v);
  clipped = total - clipped;
  if (total > 0.0 && clipped > 1e-20 * total) {
    int req = N;
    double shift_len = 0.0;
    for (int a = 0; a < g.dim; ++a) shift_len = std::max(shift_len, std::abs(vr[a]));
    while (shift_len + g.nyquist() >= pi * req / g.box_length) req *= 2;
    throw resolution_error("modulation pushes frequency support off the lattice", req);
  }
  return Field::from_spectrum(g, std::move(out));
}

Field random_field(const GridSpec& g, std::uint64_t seed, double max_freq, bool normalize) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int bubbles = 2 + static_cast<int>(rng() % 3);
  const double dxi = g.freq_spacing();
  std::vector<cd> acc(g.npoints(), cd(0, 0));
  for (int b = 0; b < bubbles; ++b) {
    const double sigma = 0.8 + 1.2 * unit(rng);
    // keep the Gaussian tail below max_freq: 5/sigma covers |F| down to ~1e-11
    const double carrier_room = std::max(0.0, max_freq - 5.0 / sigma);
    vecd center(g.dim), carrier(g.dim);
    for (int a = 0; a < g.dim; ++a) {
      center[a] = (unit(rng) - 0.5) * g.box_length / 4.0;
      carrier[a] = std::round((unit(rng) - 0.5) * 2.0 * carrier_room / dxi) * dxi;
    }
    const double amp = 0.3 + unit(rng);
    const double phase = 2.0 * pi * unit(rng);
    Field piece = gaussian_field(g, sigma, center, false);
    piece = modulate(piece, carrier);
    const cd w = std::polar(amp, phase);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * piece.values()[i];
  }
  Field out = Field::from_values(g, std::move(acc));
  if (normalize) out = out * cd(1.0 / out.l2_norm(), 0.0);
  return out;
}

}  // namespace biharm
