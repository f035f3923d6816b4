#include "biharm/anisotropic.hpp"

#include <algorithm>
#include <cmath>

namespace biharm {

AnisotropicScaling AnisotropicScaling::ell(const vecd& a) {
  const double len = norm(a);
  if (len == 0.0) throw schema_error("ell_a needs a nonzero direction");
  AnisotropicScaling s;
  s.direction.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s.direction[i] = a[i] / len;
  s.parallel_factor = std::sqrt(6.0);
  s.perpendicular_factor = std::sqrt(2.0);
  return s;
}

AnisotropicScaling AnisotropicScaling::ell_tilde(const vecd& xi_n) {
  const double q = norm2(xi_n);
  AnisotropicScaling s;
  if (q == 0.0) return isotropic(static_cast<int>(xi_n.size()), 1.0);
  const double len = std::sqrt(q);
  s.direction.resize(xi_n.size());
  for (std::size_t i = 0; i < xi_n.size(); ++i) s.direction[i] = xi_n[i] / len;
  s.parallel_factor = std::sqrt(6.0 * q + 1.0);
  s.perpendicular_factor = std::sqrt(2.0 * q + 1.0);
  return s;
}

AnisotropicScaling AnisotropicScaling::isotropic(int dim, double factor) {
  (void)dim;
  AnisotropicScaling s;
  s.parallel_factor = factor;
  s.perpendicular_factor = factor;
  return s;
}

vecd AnisotropicScaling::apply(const vecd& x) const {
  if (direction.empty()) {
    vecd y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = perpendicular_factor * x[i];
    return y;
  }
  const double p = dot(x, direction);
  vecd y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double par = p * direction[i];
    y[i] = parallel_factor * par + perpendicular_factor * (x[i] - par);
  }
  return y;
}

vecd AnisotropicScaling::apply_inverse(const vecd& x) const {
  AnisotropicScaling inv = *this;
  inv.parallel_factor = 1.0 / parallel_factor;
  inv.perpendicular_factor = 1.0 / perpendicular_factor;
  return inv.apply(x);
}

double AnisotropicScaling::determinant(int dim) const {
  return parallel_factor * std::pow(perpendicular_factor, dim - 1);
}

double AnisotropicScaling::quadratic_form(const vecd& xi) const {
  const vecd y = apply(xi);
  return norm2(y);
}

std::vector<double> AnisotropicScaling::matrix(int dim) const {
  std::vector<double> m(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double p = direction.empty() ? 0.0 : direction[i] * direction[j];
      m[static_cast<std::size_t>(i) * dim + j] =
          parallel_factor * p + perpendicular_factor * ((i == j ? 1.0 : 0.0) - p);
    }
  return m;
}

bool AnisotropicScaling::axis_aligned() const {
  if (direction.empty()) return true;
  int nonzero = 0;
  for (double c : direction)
    if (c != 0.0) ++nonzero;
  return nonzero == 1;
}

namespace {

// per-axis scale factors of a diagonal map
vecd diagonal_scales(const AnisotropicScaling& s, int dim, RescaleMode mode) {
  vecd scales(dim, s.perpendicular_factor);
  for (int a = 0; a < dim; ++a)
    if (!s.direction.empty() && s.direction[a] != 0.0) scales[a] = s.parallel_factor;
  if (mode == RescaleMode::compose_inverse)
    for (double& c : scales) c = 1.0 / c;
  return scales;
}

// content mapped outside the lattice box must carry negligible L2 mass
void check_band_limit(const Field& phi, const AnisotropicScaling& s, RescaleMode mode) {
  const GridSpec& g = phi.grid();
  GridTables tab(g);
  const double nyq = g.nyquist();
  double total = 0.0, clipped = 0.0, worst = 0.0;
  int m[3] = {0, 0, 0};
  vecd xi(g.dim);
  for (std::size_t i = 0; i < phi.spectrum().size(); ++i) {
    const double e = std::norm(phi.spectrum()[i]);
    total += e;
    g.axis_indices(i, m);
    for (int a = 0; a < g.dim; ++a) xi[a] = tab.freq[m[a]];
    const vecd mapped = mode == RescaleMode::compose ? s.apply(xi) : s.apply_inverse(xi);
    for (int a = 0; a < g.dim; ++a)
      if (std::abs(mapped[a]) >= nyq) {
        clipped += e;
        worst = std::max(worst, std::abs(mapped[a]));
        break;
      }
  }
  if (total == 0.0 || clipped <= 1e-20 * total) return;
  int req = g.points_per_axis;
  while (worst >= pi * req / g.box_length) req *= 2;
  throw resolution_error("anisotropic rescale pushes frequency support off the lattice",
                         req);
}

// separable evaluation of phi at (s_0 x_0, ..., s_{d-1} x_{d-1})
Field rescale_diagonal(const Field& phi, const vecd& scales) {
  const GridSpec& g = phi.grid();
  const int N = g.points_per_axis;
  const int d = g.dim;
  GridTables tab(g);
  // stage tensors: contract one frequency axis at a time against the kernel
  // K_a[i][k] = e^{i freq_k * s_a * x_i}
  std::vector<cd> cur(phi.spectrum());
  for (int axis = d - 1; axis >= 0; --axis) {
    std::vector<cd> kernel(static_cast<std::size_t>(N) * N);
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k)
        kernel[static_cast<std::size_t>(i) * N + k] =
            std::polar(1.0, tab.freq[k] * scales[axis] * tab.coord[i]);
    // cur shape: axes 0..axis are frequency, axis+1..d-1 are space.
    // contract the trailing frequency axis (stride pattern depends on axis pos)
    std::size_t outer = 1;
    for (int a = 0; a < axis; ++a) outer *= N;
    std::size_t inner = 1;
    for (int a = axis + 1; a < d; ++a) inner *= N;
    std::vector<cd> next(cur.size());
    for (std::size_t o = 0; o < outer; ++o) {
      const cd* block = cur.data() + o * N * inner;
      cd* oblock = next.data() + o * N * inner;
      for (int i = 0; i < N; ++i) {
        const cd* krow = kernel.data() + static_cast<std::size_t>(i) * N;
        for (std::size_t in = 0; in < inner; ++in) {
          cd acc(0.0, 0.0);
          for (int k = 0; k < N; ++k) acc += krow[k] * block[static_cast<std::size_t>(k) * inner + in];
          oblock[static_cast<std::size_t>(i) * inner + in] = acc;
        }
      }
    }
    cur.swap(next);
  }
  const double scale = 1.0 / std::pow(g.box_length, d);
  for (cd& v : cur) v *= scale;
  return Field::from_values(g, std::move(cur));
}

// direct nonuniform evaluation, pruned to significant modes
Field rescale_general(const Field& phi, const AnisotropicScaling& s, RescaleMode mode) {
  const GridSpec& g = phi.grid();
  const int d = g.dim;
  GridTables tab(g);
  double peak = 0.0;
  for (const cd& v : phi.spectrum()) peak = std::max(peak, std::abs(v));
  struct Mode { vecd xi; cd coeff; };
  std::vector<Mode> modes;
  int m[3] = {0, 0, 0};
  for (std::size_t i = 0; i < phi.spectrum().size(); ++i) {
    if (std::abs(phi.spectrum()[i]) <= 1e-16 * peak) continue;
    g.axis_indices(i, m);
    vecd xi(d);
    for (int a = 0; a < d; ++a) xi[a] = tab.freq[m[a]];
    // e^{i xi . (M x)} = e^{i (M xi) . x} for symmetric M
    vecd mapped = (mode == RescaleMode::compose) ? s.apply(xi) : s.apply_inverse(xi);
    modes.push_back({std::move(mapped), phi.spectrum()[i]});
  }
  const double scale = 1.0 / std::pow(g.box_length, d);
  std::vector<cd> out(g.npoints());
  vecd x(d);
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.axis_indices(i, m);
    for (int a = 0; a < d; ++a) x[a] = tab.coord[m[a]];
    cd acc(0.0, 0.0);
    for (const Mode& md : modes) acc += md.coeff * std::polar(1.0, dot(md.xi, x));
    out[i] = scale * acc;
  }
  return Field::from_values(g, std::move(out));
}

}  // namespace

Field anisotropic_rescale(const Field& phi, const AnisotropicScaling& ell, RescaleMode mode) {
  const GridSpec& g = phi.grid();
  if (!ell.direction.empty() && static_cast<int>(ell.direction.size()) != g.dim)
    throw schema_error("anisotropic direction dimension mismatch");
  check_band_limit(phi, ell, mode);
  if (ell.axis_aligned())
    return rescale_diagonal(phi, diagonal_scales(ell, g.dim, mode));
  return rescale_general(phi, ell, mode);
}

}  // namespace biharm
