#ifndef BIHARM_TYPES_HPP
#define BIHARM_TYPES_HPP

#include <cmath>
#include <numeric>
#include <string>

#include "biharm/errors.hpp"

namespace biharm {

/// Parameters of the propagator family e^{it(Delta^2 - mu Delta)}.
struct ModelParams {
  double mu = 0.0;
  int dim = 2;

  ModelParams() = default;
  ModelParams(double mu_, int dim_) : mu(mu_), dim(dim_) {
    if (mu < 0.0) throw schema_error("mu must be >= 0");
    if (dim < 2) throw schema_error("dim must be >= 2");
  }
};

/// Exact rational arithmetic for the exponent bookkeeping.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw schema_error("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational inverse() const { return Rational(den, num); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}
inline Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
inline Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

/// The closed-form exponents attached to dimension d.
struct ExponentSet {
  int d;
  Rational p_strichartz;  // 2(d+2)/d
  Rational q_refined;     // 2(d^2+3d+1)/d^2
  Rational theta;         // 2/(d+2)^2
  Rational theta_prime;   // (d+2)^2/2 = 1/theta
  Rational cap_exponent;  // (d+2)/(d q) - 1/2
  Rational deriv_order;   // d/(d+2)

  static ExponentSet for_dim(int d) {
    if (d < 2) throw schema_error("exponents need d >= 2");
    ExponentSet e;
    e.d = d;
    const long long dd = d;
    e.p_strichartz = Rational(2 * (dd + 2), dd);
    e.q_refined = Rational(2 * (dd * dd + 3 * dd + 1), dd * dd);
    e.theta = Rational(2, (dd + 2) * (dd + 2));
    e.theta_prime = e.theta.inverse();
    // (d+2)/(d q) = (d+2) d / (2(d^2+3d+1))
    e.cap_exponent = Rational((dd + 2) * dd, 2 * (dd * dd + 3 * dd + 1)) - Rational(1, 2);
    e.deriv_order = Rational(dd, dd + 2);
    return e;
  }
};

}  // namespace biharm

#endif
