#ifndef BIHARM_FIELD_HPP
#define BIHARM_FIELD_HPP

#include <complex>
#include <vector>

#include "biharm/fft.hpp"
#include "biharm/grid.hpp"

namespace biharm {

/// Complex grid function carrying both its spatial samples and its exact
/// frequency representation.  Immutable value type; every operation builds
/// a new Field, so concurrent use is safe.
class Field {
 public:
  Field() = default;

  static Field from_values(const GridSpec& g, std::vector<cd> values);
  static Field from_spectrum(const GridSpec& g, std::vector<cd> spectrum);
  static Field zero(const GridSpec& g);

  const GridSpec& grid() const { return grid_; }
  const std::vector<cd>& values() const { return values_; }
  const std::vector<cd>& spectrum() const { return spectrum_; }

  double l2_norm() const;           // spatial Riemann sum
  double l2_norm_spectral() const;  // frequency-side Plancherel sum
  double l2_norm_sq() const;

  bool is_zero(double tol = 0.0) const;

  /// Largest |xi| carrying a coefficient above rel_tol * max|F|; 0 for the
  /// zero field.
  double spectral_radius(double rel_tol = 1e-13) const;

  /// Count of modes above rel_tol * max|F|.
  std::size_t spectral_spread(double rel_tol = 1e-6) const;

  /// Fraction of L2 mass at |x| > L/4 (the localization budget diagnostic).
  double mass_outside_quarter_box() const;

  friend cd inner_product(const Field& a, const Field& b);

 private:
  GridSpec grid_;
  std::vector<cd> values_;
  std::vector<cd> spectrum_;
  void check_finite() const;
};

/// <a, b> = sum_x a conj(b) dx^d
cd inner_product(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, cd scale);

/// exp(-|x - center|^2 / (2 sigma^2)), optionally scaled to unit L2 norm.
Field gaussian_field(const GridSpec& g, double sigma, const vecd& center = {},
                     bool normalize = true);

/// Compactly supported smooth bump of spatial radius `radius` (identically 1
/// inside `radius`, 0 outside 2*radius), optionally unit-normalized.
Field bump_field(const GridSpec& g, double radius, const vecd& center = {},
                 bool normalize = true);

/// Multiply by e^{i x . v}; v is rounded to the frequency lattice so the
/// operation is an exact spectral shift.  The rounding residue is returned
/// through rounded if non-null.
Field modulate(const Field& f, const vecd& v, vecd* rounded = nullptr);

/// Deterministic localized pseudo-random datum: a seeded superposition of a
/// few modulated Gaussians with spectral radius <= max_freq and centers
/// within |x| <= L/8.
Field random_field(const GridSpec& g, std::uint64_t seed, double max_freq,
                   bool normalize = true);

}  // namespace biharm

#endif
