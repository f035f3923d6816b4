#ifndef BIHARM_SYMMETRY_HPP
#define BIHARM_SYMMETRY_HPP

#include "biharm/field.hpp"
#include "biharm/types.hpp"

namespace biharm {

/// Parameters of one pseudo-symmetry B = S_mu(-t0) g_{h,x0} e^{i(.)h xi},
/// where g_{h,x0} f = h^{-d/2} f((x - x0)/h).
struct SymmetryParams {
  double h = 1.0;
  vecd xi;      // frequency parameter; the modulation applied is h*xi
  vecd x0;      // spatial translation
  double t0 = 0.0;
  double mu = 0.0;

  SymmetryParams() = default;
  SymmetryParams(double h_, vecd xi_, vecd x0_, double t0_, double mu_)
      : h(h_), xi(std::move(xi_)), x0(std::move(x0_)), t0(t0_), mu(mu_) {
    if (h <= 0.0) throw schema_error("symmetry scale h must be positive");
    if (mu < 0.0) throw schema_error("mu must be >= 0");
  }

  bool is_identity() const;
};

/// Rounding bookkeeping: modulations act on the frequency lattice, so h*xi is
/// rounded to the nearest lattice frequency and the residue is reported.
struct SymmetryDiagnostics {
  vecd modulation_requested;  // h * xi
  vecd modulation_applied;    // nearest lattice frequency
  double rounding_residue = 0.0;
};

enum class BandLimitPolicy {
  enforce,   // resolution_error when content would leave the lattice
  tolerate,  // sample the trigonometric representative as-is
};

/// L2-normalized dyadic dilation h^{-d/2} f(x/h); h must be a power of two.
Field dilate(const Field& f, double h,
             BandLimitPolicy policy = BandLimitPolicy::enforce);

/// f(x - x0) for arbitrary real x0 (exact frequency-side phase).
Field translate(const Field& f, const vecd& x0);

Field apply_symmetry(const Field& phi, const SymmetryParams& s,
                     SymmetryDiagnostics* diag = nullptr,
                     BandLimitPolicy policy = BandLimitPolicy::enforce);

Field invert_symmetry(const Field& f, const SymmetryParams& s,
                      SymmetryDiagnostics* diag = nullptr,
                      BandLimitPolicy policy = BandLimitPolicy::enforce);

/// The six summands of the parameter-orthogonality functional, evaluated for
/// the ordered pair (a, b) = (j, k):
///   h_j/h_k,  h_k/h_j,  |h_j xi_j - h_k xi_k|,  |t_k - t_j| / h_j^4,
///   |t_k - t_j| (mu + 2|xi_j|^2) / h_j^2,
///   |x_j - x_k + 2 (t_j - t_k)(2|xi_j|^2 + mu) xi_j| / h_j.
struct OrthogonalityRecord {
  double scale_jk = 0.0;
  double scale_kj = 0.0;
  double modulation_gap = 0.0;
  double quartic_time = 0.0;
  double quadratic_time = 0.0;
  double translation_drift = 0.0;
  double total() const {
    return scale_jk + scale_kj + modulation_gap + quartic_time + quadratic_time +
           translation_drift;
  }
};

OrthogonalityRecord orthogonality_divergence(const SymmetryParams& a,
                                             const SymmetryParams& b);

}  // namespace biharm

#endif
