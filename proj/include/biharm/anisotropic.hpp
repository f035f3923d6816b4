#ifndef BIHARM_ANISOTROPIC_HPP
#define BIHARM_ANISOTROPIC_HPP

#include "biharm/field.hpp"

namespace biharm {

/// Symmetric positive definite dilation c_par * proj_a + c_perp * (I - proj_a).
/// `direction` is the unit vector a/|a|; an empty direction marks an isotropic
/// map with factor c_perp = c_par.
struct AnisotropicScaling {
  vecd direction;
  double parallel_factor = 1.0;
  double perpendicular_factor = 1.0;

  /// ell_a: sqrt(6) along a, sqrt(2) transverse; depends only on a/|a|.
  static AnisotropicScaling ell(const vecd& a);
  /// ell-tilde_n: sqrt(6|xi_n|^2 + 1) along xi_n, sqrt(2|xi_n|^2 + 1) transverse.
  static AnisotropicScaling ell_tilde(const vecd& xi_n);
  static AnisotropicScaling isotropic(int dim, double factor);

  vecd apply(const vecd& x) const;
  vecd apply_inverse(const vecd& x) const;
  double determinant(int dim) const;
  /// |ell(xi)|^2, the quadratic form of the induced multiplier.
  double quadratic_form(const vecd& xi) const;
  /// row-major dim x dim matrix
  std::vector<double> matrix(int dim) const;
  /// true when the matrix is diagonal on this grid's axes
  bool axis_aligned() const;
};

enum class RescaleMode { compose, compose_inverse };

/// phi(ell(x)) or phi(ell^{-1}(x)) by exact evaluation of the band-limited
/// Fourier series at the mapped points.
Field anisotropic_rescale(const Field& phi, const AnisotropicScaling& ell,
                          RescaleMode mode);

}  // namespace biharm

#endif
