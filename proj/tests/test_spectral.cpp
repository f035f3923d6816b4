#include "doctest.h"

#include "biharm/anisotropic.hpp"
#include "biharm/symmetry.hpp"
#include "helpers.hpp"

using namespace biharm;
using bt::grid128;
using bt::grid64;
using bt::lattice_mode;
using bt::rel_diff;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec(4, 64, 32.0), schema_error);
  CHECK_THROWS_AS(GridSpec(2, 12, 32.0), schema_error);
  CHECK_THROWS_AS(GridSpec(2, 4, 32.0), schema_error);
  CHECK_THROWS_AS(GridSpec(2, 64, -1.0), schema_error);
  GridSpec g = grid64();
  CHECK(g.nyquist() == doctest::Approx(2.0 * pi));
}

TEST_CASE("transform roundtrip and Plancherel") {
  GridSpec g = grid64();
  Field zero = Field::zero(g);
  CHECK(zero.l2_norm() == 0.0);
  for (const cd& v : zero.spectrum()) CHECK(std::abs(v) == 0.0);

  Field f = random_field(g, 11, 3.0);
  std::vector<cd> F, back;
  fft::forward(g, f.values(), F);
  fft::inverse(g, F, back);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < back.size(); ++i) {
    num += std::norm(back[i] - f.values()[i]);
    den += std::norm(f.values()[i]);
  }
  CHECK(std::sqrt(num / den) < 1e-12);
  CHECK(std::abs(f.l2_norm() - f.l2_norm_spectral()) < 1e-12 * f.l2_norm());
}

TEST_CASE("single lattice mode maps to one coefficient") {
  GridSpec g = grid64();
  Field f = lattice_mode(g, {5, -3});
  std::size_t nonzero = 0, where = 0;
  for (std::size_t i = 0; i < f.spectrum().size(); ++i) {
    if (std::abs(f.spectrum()[i]) > 1e-9) { ++nonzero; where = i; }
  }
  CHECK(nonzero == 1);
  int m[3];
  g.axis_indices(where, m);
  CHECK(g.signed_index(m[0]) == 5);
  CHECK(g.signed_index(m[1]) == -3);
}

TEST_CASE("apply_multiplier basics") {
  GridSpec g = grid64();
  Field f = random_field(g, 3, 3.0);
  Field same = apply_multiplier(f, [](const vecd&) { return cd(1.0, 0.0); });
  CHECK(rel_diff(f, same) < 1e-14);

  Field mode = lattice_mode(g, {4, 0});
  const double xi2 = g.freq(4) * g.freq(4);
  Field lap = apply_multiplier(mode, [](const vecd& xi) { return cd(-norm2(xi), 0.0); });
  CHECK(rel_diff(lap, mode * cd(-xi2, 0.0)) < 1e-13);

  const double half_nyq = g.nyquist() / 2.0;
  auto proj = [half_nyq](const vecd& xi) {
    return cd(norm(xi) <= half_nyq ? 1.0 : 0.0, 0.0);
  };
  Field once = apply_multiplier(f, proj);
  Field twice = apply_multiplier(once, proj);
  CHECK(rel_diff(once, twice) < 1e-14);

  CHECK_THROWS_AS(
      apply_multiplier(f, [](const vecd& xi) { return cd(1.0 / norm2(xi), 0.0); }),
      degeneracy_error);
}

TEST_CASE("fractional derivative") {
  GridSpec g = grid64();
  ModelParams mu1(1.0, 2), mu0(0.0, 2);
  Field f = random_field(g, 5, 3.0);
  CHECK(rel_diff(fractional_derivative(f, mu1, 0.0), f) < 1e-14);

  const int k1 = static_cast<int>(std::round(1.0 / g.freq_spacing()));
  Field mode = lattice_mode(g, {k1, 0});
  const double x2 = std::pow(g.freq(k1), 2);
  Field d2 = fractional_derivative(mode, mu1, 2.0);
  CHECK(rel_diff(d2, mode * cd(1.0 + x2, 0.0)) < 1e-13);

  // mu = 0, s = d/(d+2) = 1/2 at d = 2: scale (|xi0|^2)^{1/4}
  const int k2 = static_cast<int>(std::round(2.0 / g.freq_spacing()));
  Field mode2 = lattice_mode(g, {0, k2});
  const double scale = std::pow(std::pow(g.freq(k2), 2), 0.25);
  Field dh = fractional_derivative(mode2, mu0, 0.5);
  CHECK(rel_diff(dh, mode2 * cd(scale, 0.0)) < 1e-13);

  Field dc = gaussian_field(g, 1.0);
  CHECK_THROWS_AS(fractional_derivative(dc, mu0, -0.5), degeneracy_error);
}

TEST_CASE("propagator identities") {
  GridSpec g = grid64();
  ModelParams mu0(0.0, 2), mu1(1.0, 2);
  Field f = random_field(g, 7, 3.0);

  CHECK(rel_diff(propagate(f, mu1, 0.0), f) < 1e-14);

  // phase |xi0|^4 t = pi flips the sign of the mode
  const int k1 = static_cast<int>(std::round(1.0 / g.freq_spacing()));
  Field mode = lattice_mode(g, {k1, 0});
  const double xi4 = std::pow(std::pow(g.freq(k1), 2), 2);
  Field flipped = propagate(mode, mu0, pi / xi4);
  CHECK(rel_diff(flipped, mode * cd(-1.0, 0.0)) < 1e-12);

  SUBCASE("unitarity and group law") {
    Field u = propagate(f, mu1, 0.37);
    CHECK(std::abs(u.l2_norm() - f.l2_norm()) < 1e-10 * f.l2_norm());
    Field two = propagate(propagate(f, mu1, 0.17), mu1, 0.2);
    CHECK(rel_diff(u, two) < 1e-10);
  }

  SUBCASE("commutation with the fractional derivative") {
    Field a = fractional_derivative(propagate(f, mu1, 0.3), mu1, 0.5);
    Field b = propagate(fractional_derivative(f, mu1, 0.5), mu1, 0.3);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
      worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    CHECK(worst <= 1e-12 * f.l2_norm());
  }

  SUBCASE("mu-scaling identity at mu = 4") {
    // compactly supported profile keeps every step of the chain on-grid
    GridSpec gg = grid128();
    Field fs = modulate(bump_field(gg, 2.0), {1.2, -0.8});
    const double mu = 4.0, t = 0.01;
    Field lhs = propagate(fs, ModelParams(mu, 2), t);
    Field a = dilate(fs, 2.0) * cd(2.0, 0.0);   // f(x / sqrt(mu))
    a = propagate(a, ModelParams(1.0, 2), mu * mu * t);
    Field rhs = dilate(a, 0.5) * cd(0.5, 0.0);  // [...](sqrt(mu) x)
    CHECK(rel_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("schrodinger propagator") {
  GridSpec g = grid64();
  Field f = gaussian_field(g, 1.0);
  CHECK(rel_diff(schrodinger_propagate(f, 0.0), f) < 1e-14);

  double prev = 1e300;
  for (double t : {0.0, 0.3, 0.8, 1.5}) {
    const auto& v = schrodinger_propagate(f, t).values();
    double sup = 0.0;
    for (const cd& c : v) sup = std::max(sup, std::abs(c));
    CHECK(sup < prev);
    prev = sup;
  }

  Field fwd = schrodinger_propagate(f, 0.4, +1);
  Field bwd = schrodinger_propagate(f, -0.4, +1);
  CHECK(std::abs(fwd.l2_norm() - bwd.l2_norm()) < 1e-12);
}

TEST_CASE("littlewood-paley partition of unity") {
  GridSpec g = grid64();
  BumpProfile bump;
  auto xi2 = freq_norm2_table(g);

  SUBCASE("mu = 0 partition on nonzero frequencies") {
    auto shells = lp_shells(g, 0);
    double worst = 0.0;
    for (std::size_t i = 0; i < xi2.size(); ++i) {
      if (xi2[i] == 0.0) continue;
      double s = 0.0;
      for (double N : shells) s += lp_symbol(std::sqrt(xi2[i]), N, 0, bump);
      worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst <= 1e-12);
  }

  SUBCASE("mu = 1 partition on every frequency") {
    auto shells = lp_shells(g, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < xi2.size(); ++i) {
      double s = 0.0;
      for (double N : shells) s += lp_symbol(std::sqrt(xi2[i]), N, 1, bump);
      worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst <= 1e-12);
  }

  SUBCASE("mode survives only in two adjacent shells") {
    const double N0 = 2.0;
    const int k = static_cast<int>(std::round(3.0 / g.freq_spacing()));
    Field mode = lattice_mode(g, {k, 0});  // |xi| ~ 1.5 * N0
    ModelParams mu0(0.0, 2);
    for (double N : lp_shells(g, 0)) {
      Field piece = littlewood_paley_project(mode, N, mu0, bump);
      const bool adjacent = (N == N0) || (N == 2.0 * N0);
      if (!adjacent) CHECK(piece.l2_norm() < 1e-12);
    }
  }

  SUBCASE("mu = 1 scale-zero projection kills |xi| >= 1") {
    const int k = static_cast<int>(std::ceil(1.0 / g.freq_spacing()));
    Field mode = lattice_mode(g, {k, 0});
    Field p0 = littlewood_paley_project(mode, 0.0, ModelParams(1.0, 2), bump);
    CHECK(p0.l2_norm() < 1e-12);
  }

  CHECK_THROWS_AS(littlewood_paley_project(gaussian_field(g, 1.0), 3.0,
                                           ModelParams(0.0, 2), bump),
                  schema_error);
  CHECK_THROWS_AS(littlewood_paley_project(gaussian_field(g, 1.0), 0.0,
                                           ModelParams(0.0, 2), bump),
                  schema_error);
}

TEST_CASE("caps") {
  ModelParams mu1(1.0, 2);
  SUBCASE("admissibility threshold from the definition") {
    Cap ok({1.0, 0.0}, 0.25);
    CHECK(ok.admissible(mu1));  // 8 * 0.25 = 2 = |xi0| + 1
    Cap bad({1.0, 0.0}, 0.26);
    CHECK(!bad.admissible(mu1));
  }
  SUBCASE("volume") {
    Cap c({1.0, 0.0}, 0.5);
    CHECK(c.volume() == doctest::Approx(pi * 0.25));
    Cap c3({1.0, 0.0, 0.0}, 0.5);
    CHECK(c3.volume() == doctest::Approx(4.0 / 3.0 * pi * 0.125));
  }
  SUBCASE("projection support rules") {
    GridSpec g = grid64();
    BumpProfile bump;
    vecd center = {2.0, 0.0};
    Field inner = modulate(gaussian_field(g, 8.0), center);  // tight spectrum
    Cap cap(center, 0.8);
    Field proj = cap_project(inner, cap, bump);
    CHECK(rel_diff(proj, inner) < 1e-8);
    Field far = modulate(gaussian_field(g, 8.0), {-2.0, 0.0});
    CHECK(cap_project(far, cap, bump).l2_norm() < 1e-8 * far.l2_norm());
    Cap inadmissible({1.0, 0.0}, 0.26);
    ModelParams mu1b(1.0, 2);
    CHECK_THROWS_AS(cap_project(inner, inadmissible, bump, &mu1b), schema_error);
    CHECK_NOTHROW(cap_project(inner, inadmissible, bump, &mu1b, true));
  }
}

TEST_CASE("symmetry operators") {
  GridSpec g = grid64();
  Field phi = gaussian_field(g, 1.0);

  SUBCASE("identity parameters") {
    SymmetryParams id(1.0, {0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);
    CHECK(id.is_identity());
    CHECK(rel_diff(apply_symmetry(phi, id), phi) < 1e-14);
  }

  SUBCASE("pure on-lattice translation is an exact shift") {
    vecd x0 = {4.0 * g.spacing(), -2.0 * g.spacing()};
    SymmetryParams s(1.0, {0.0, 0.0}, x0, 0.0, 0.0);
    Field moved = apply_symmetry(phi, s);
    CHECK(std::abs(moved.l2_norm() - phi.l2_norm()) < 1e-12);
    int m[3], srcm[3];
    srcm[2] = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < moved.values().size(); ++i) {
      g.axis_indices(i, m);
      srcm[0] = (m[0] - 4 + g.points_per_axis) % g.points_per_axis;
      srcm[1] = (m[1] + 2 + g.points_per_axis) % g.points_per_axis;
      worst = std::max(worst,
                       std::abs(moved.values()[i] - phi.values()[g.flat_index(srcm)]));
    }
    CHECK(worst < 1e-12);
  }

  SUBCASE("lattice modulation shifts the spectrum exactly") {
    const double dxi = g.freq_spacing();
    SymmetryParams s(1.0, {3.0 * dxi, 0.0}, {0.0, 0.0}, 0.0, 0.0);
    SymmetryDiagnostics diag;
    Field moved = apply_symmetry(phi, s, &diag);
    CHECK(diag.rounding_residue == 0.0);
    const auto peak_before = bt::peak_index(phi.spectrum());
    const auto peak_after = bt::peak_index(moved.spectrum());
    int mb[3], ma[3];
    g.axis_indices(peak_before, mb);
    g.axis_indices(peak_after, ma);
    CHECK(g.signed_index(ma[0]) - g.signed_index(mb[0]) == 3);
    CHECK(g.signed_index(ma[1]) == g.signed_index(mb[1]));
  }

  SUBCASE("isometry and inverse across scales") {
    for (double h : {0.5, 1.0, 2.0, 4.0}) {
      SymmetryParams s(h, {1.1, -0.7}, {1.3, 0.2}, 0.21, 1.0);
      Field b = apply_symmetry(phi, s);
      CHECK(std::abs(b.l2_norm() - phi.l2_norm()) <= 1e-10 * phi.l2_norm());
      CHECK(rel_diff(invert_symmetry(b, s), phi) <= 1e-10);
    }
  }

  SUBCASE("band-limit violation names the required resolution") {
    Field wide = random_field(g, 9, 4.0);
    SymmetryParams s(1.0 / 8.0, {0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);
    try {
      apply_symmetry(wide, s);
      CHECK(false);
    } catch (const resolution_error& e) {
      CHECK(e.required_points > g.points_per_axis);
    }
  }

  SUBCASE("non-dyadic scale is rejected") {
    SymmetryParams s(3.0, {0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);
    CHECK_THROWS_AS(apply_symmetry(phi, s), schema_error);
  }
}

TEST_CASE("orthogonality divergence record") {
  SymmetryParams a(1.0, {0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);
  CHECK(orthogonality_divergence(a, a).total() == doctest::Approx(2.0));

  SymmetryParams b = a;
  b.h = 4.0;
  const auto r = orthogonality_divergence(a, b);
  CHECK(r.scale_jk + r.scale_kj == doctest::Approx(4.25));

  SymmetryParams j(1.0, {0.0, 0.0}, {1.0, 2.0}, 0.0, 0.0);
  SymmetryParams k(1.0, {0.0, 0.0}, {4.0, 6.0}, 3.5, 0.0);
  const auto q = orthogonality_divergence(j, k);
  CHECK(q.quartic_time == doctest::Approx(3.5));
  CHECK(q.quadratic_time == doctest::Approx(0.0));
  CHECK(q.translation_drift == doctest::Approx(5.0));
}

TEST_CASE("anisotropic scaling") {
  SUBCASE("point maps of ell_a") {
    auto ell = AnisotropicScaling::ell({1.0, 0.0});
    auto y = ell.apply({1.0, 0.0});
    CHECK(y[0] == doctest::Approx(std::sqrt(6.0)));
    CHECK(y[1] == doctest::Approx(0.0));
    auto z = ell.apply({0.0, 1.0});
    CHECK(z[0] == doctest::Approx(0.0));
    CHECK(z[1] == doctest::Approx(std::sqrt(2.0)));
  }

  SUBCASE("eigenvalues of 2 ell^2 are 12, 4, ..., 4") {
    auto ell = AnisotropicScaling::ell({0.6, -0.8});
    vecd par = {0.6, -0.8}, perp = {0.8, 0.6};
    auto twice = [&](const vecd& v) {
      auto w = ell.apply(ell.apply(v));
      for (double& c : w) c *= 2.0;
      return w;
    };
    auto tp = twice(par);
    CHECK(tp[0] == doctest::Approx(12.0 * par[0]));
    CHECK(tp[1] == doctest::Approx(12.0 * par[1]));
    auto tq = twice(perp);
    CHECK(tq[0] == doctest::Approx(4.0 * perp[0]));
    CHECK(tq[1] == doctest::Approx(4.0 * perp[1]));
  }

  SUBCASE("depends only on the direction, bit for bit") {
    vecd a = {0.3717, -1.2345};
    vecd a2 = {2.0 * a[0], 2.0 * a[1]};
    auto e1 = AnisotropicScaling::ell(a);
    auto e2 = AnisotropicScaling::ell(a2);
    CHECK(e1.direction[0] == e2.direction[0]);
    CHECK(e1.direction[1] == e2.direction[1]);
    GridSpec g(2, 32, 16.0);
    Field phi = gaussian_field(g, 1.0);
    Field r1 = anisotropic_rescale(phi, e1, RescaleMode::compose_inverse);
    Field r2 = anisotropic_rescale(phi, e2, RescaleMode::compose_inverse);
    for (std::size_t i = 0; i < r1.values().size(); ++i) {
      CHECK(r1.values()[i].real() == r2.values()[i].real());
      CHECK(r1.values()[i].imag() == r2.values()[i].imag());
    }
  }

  SUBCASE("norm change of variables") {
    GridSpec g(2, 64, 16.0);
    Field phi = gaussian_field(g, 1.0);
    auto ell = AnisotropicScaling::ell({1.0, 0.0});
    Field r = anisotropic_rescale(phi, ell, RescaleMode::compose_inverse);
    const double lhs = r.l2_norm_sq();
    const double rhs = ell.determinant(2) * phi.l2_norm_sq();
    CHECK(std::abs(lhs - rhs) <= 1e-8 * rhs);
    Field fwd = anisotropic_rescale(phi, ell, RescaleMode::compose);
    Field round = anisotropic_rescale(fwd, ell, RescaleMode::compose_inverse);
    CHECK(rel_diff(round, phi) < 1e-8);
  }

  SUBCASE("ell tilde factors") {
    vecd xi = {2.0, 0.0};
    auto lt = AnisotropicScaling::ell_tilde(xi);
    CHECK(lt.parallel_factor == doctest::Approx(5.0));
    CHECK(lt.perpendicular_factor == doctest::Approx(3.0));
  }
}
