#ifndef BIHARM_GRID_HPP
#define BIHARM_GRID_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "biharm/errors.hpp"

namespace biharm {

using cd = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

using vecd = std::vector<double>;  // small spatial/frequency vector, size = dim

inline double norm2(const vecd& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}
inline double norm(const vecd& v) { return std::sqrt(norm2(v)); }
inline double dot(const vecd& a, const vecd& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Periodic box discretization of R^d: N points per axis on [-L/2, L/2)^d.
/// Representable frequencies are (2*pi/L)*k, k integer in [-N/2, N/2).
struct GridSpec {
  int dim = 2;
  int points_per_axis = 64;
  double box_length = 32.0;

  GridSpec() = default;
  GridSpec(int d, int n, double length) : dim(d), points_per_axis(n), box_length(length) {
    validate();
  }

  void validate() const {
    if (dim < 2 || dim > 3) throw schema_error("grid dim must be 2 or 3");
    if (box_length <= 0.0) throw schema_error("grid box_length must be positive");
    int n = points_per_axis;
    if (n < 8 || (n & (n - 1)) != 0)
      throw schema_error("grid points_per_axis must be a power of two >= 8");
  }

  double spacing() const { return box_length / points_per_axis; }
  double freq_spacing() const { return 2.0 * pi / box_length; }
  double nyquist() const { return pi * points_per_axis / box_length; }

  std::size_t npoints() const {
    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points_per_axis);
    return n;
  }
  double cell_volume() const { return std::pow(spacing(), dim); }

  /// signed lattice integer for stored axis index m in [0, N)
  int signed_index(int m) const { return m < points_per_axis / 2 ? m : m - points_per_axis; }
  /// stored axis index for signed lattice integer k in [-N/2, N/2)
  int stored_index(int k) const { return k >= 0 ? k : k + points_per_axis; }

  double coord(int m) const { return -0.5 * box_length + m * spacing(); }
  double freq(int m) const { return freq_spacing() * signed_index(m); }

  void axis_indices(std::size_t flat, int* m) const {
    for (int a = dim - 1; a >= 0; --a) {
      m[a] = static_cast<int>(flat % points_per_axis);
      flat /= points_per_axis;
    }
  }
  std::size_t flat_index(const int* m) const {
    std::size_t f = 0;
    for (int a = 0; a < dim; ++a) f = f * points_per_axis + static_cast<std::size_t>(m[a]);
    return f;
  }

  bool operator==(const GridSpec& o) const {
    return dim == o.dim && points_per_axis == o.points_per_axis && box_length == o.box_length;
  }
};

/// Per-axis tables used by symbol evaluation loops.
struct GridTables {
  std::vector<double> freq;   // frequency value per stored axis index
  std::vector<double> coord;  // spatial coordinate per stored axis index
  explicit GridTables(const GridSpec& g)
      : freq(g.points_per_axis), coord(g.points_per_axis) {
    for (int m = 0; m < g.points_per_axis; ++m) {
      freq[m] = g.freq(m);
      coord[m] = g.coord(m);
    }
  }
};

/// |xi|^2 for every flat lattice index.
std::vector<double> freq_norm2_table(const GridSpec& g);

}  // namespace biharm

#endif
