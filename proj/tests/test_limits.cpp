#include "doctest.h"

#include "biharm/anisotropic.hpp"
#include "biharm/limits.hpp"
#include "helpers.hpp"

using namespace biharm;
using bt::rel_diff;

namespace {

GridSpec fine_grid() { return GridSpec(2, 128, 16.0); }  // nyquist ~ 25

// annulus profile with 0 outside its spectrum: a modulated gaussian
Field annulus_profile(const GridSpec& g, double carrier = 2.0, double sigma = 1.0) {
  return modulate(gaussian_field(g, sigma), {carrier, 0.0});
}

DecaySchedule schedule_from(std::vector<SymmetryParams> entries) {
  DecaySchedule s;
  s.name = "test";
  s.divergence_tag = "test";
  s.entries = std::move(entries);
  return s;
}

}  // namespace

TEST_CASE("envelope function") {
  EnvelopeFn v{2.0, 100.0, 2};
  CHECK(v.value(0.0, 0.0) == doctest::Approx(2.0));
  CHECK(v.value(0.0, 3.0) == doctest::Approx(2.0 / 2.0));  // (1+3)^{-1} branch
  CHECK(v.value(5.0, 1.0) == doctest::Approx(2.0 / 6.0));  // |y| < 100|s| branch
  const double n1 = v.lp_norm(50.0, 50.0, 160);
  const double n2 = v.lp_norm(50.0, 50.0, 320);
  CHECK(std::isfinite(n1));
  CHECK(std::abs(n1 - n2) <= 0.02 * n1);
}

TEST_CASE("envelope check") {
  GridSpec g = fine_grid();
  ModelParams mu0(0.0, 2);
  Field psi = annulus_profile(g, 2.0, 1.0);

  SUBCASE("hypothesis precondition") {
    CHECK_THROWS_AS(envelope_check(psi, mu0, {1.0, 0.0}, {0.0, 0.1}), schema_error);
  }

  SUBCASE("a = 0 branch: fitted decay near -d/2 and no violations") {
    std::vector<double> times;
    for (int i = 1; i <= 24; ++i) times.push_back(0.05 * i);
    auto res = envelope_check(psi, mu0, {0.0, 0.0}, times);
    CHECK(res.violations_fitted == 0);
    CHECK(res.fitted_C > 0.0);
    CHECK(res.decay_slope == doctest::Approx(-1.0).epsilon(0.2));
    CHECK(res.violations_coarse == 0);
  }

  SUBCASE("moving frame: peak tracks the group velocity") {
    const double dxi = g.freq_spacing();
    vecd a = {std::round(16.0 / dxi) * dxi, 0.0};
    // drift = (4|a|^2 + 2mu) a t must stay within the unambiguous window
    const double drift_rate = 4.0 * norm2(a) * norm(a);
    std::vector<double> times;
    for (int i = 1; i <= 6; ++i) times.push_back(0.3 * i * g.box_length / 8.0 / drift_rate);
    auto res = envelope_check(psi, mu0, a, times);
    CHECK(res.peak_track_max_rel_err <= 0.10);
  }
}

TEST_CASE("reduced forms") {
  GridSpec g = fine_grid();
  ModelParams mu0(0.0, 2);
  Field phi = annulus_profile(g);

  SUBCASE("vanish as the time window shrinks") {
    SymmetryParams par(1.0, {16.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);
    const double big =
        reduced_form(ReducedKind::R57, phi, par, mu0, TimeQuadrature::simpson(0.5, 32));
    const double small =
        reduced_form(ReducedKind::R57, phi, par, mu0, TimeQuadrature::simpson(0.005, 32));
    CHECK(small < 0.05 * big);
  }

  SUBCASE("R57 decays in |a|") {
    auto q = TimeQuadrature::simpson(0.5, 64);
    SymmetryParams lo(1.0, {16.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);    // |a| = 2^4
    SymmetryParams hi(1.0, {256.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);   // |a| = 2^8
    const double vlo = reduced_form(ReducedKind::R57, phi, lo, mu0, q);
    const double vhi = reduced_form(ReducedKind::R57, phi, hi, mu0, q);
    CHECK(vhi < vlo);
  }

  SUBCASE("carrier required") {
    SymmetryParams par(1.0, {0.0, 0.0}, {0.0, 0.0}, 0.0, 0.0);
    CHECK_THROWS_AS(
        reduced_form(ReducedKind::R57, phi, par, mu0, TimeQuadrature::simpson(0.5, 16)),
        schema_error);
  }
}

TEST_CASE("conjugation identity for the anisotropic dilation") {
  // (e^{-it Delta}(phi o ell_a)) o ell_a^{-1} = e^{it |ell_a(-i grad)|^2} phi
  GridSpec g = fine_grid();
  Field phi = gaussian_field(g, 1.0);
  const vecd a = {8.0, 0.0};
  auto ell = AnisotropicScaling::ell(a);
  const double t = 0.02;

  Field lhs = anisotropic_rescale(phi, ell, RescaleMode::compose);
  lhs = schrodinger_propagate(lhs, t, -1);
  lhs = anisotropic_rescale(lhs, ell, RescaleMode::compose_inverse);

  Field rhs = apply_multiplier(phi, [&](const vecd& xi) {
    return std::polar(1.0, t * ell.quadratic_form(xi));
  });
  CHECK(rel_diff(lhs, rhs) <= 1e-8);
}

TEST_CASE("limit deficits") {
  GridSpec g = fine_grid();
  Field phi = annulus_profile(g);

  SUBCASE("L44_47: shrinking h drives the deficit down, identity exact") {
    std::vector<SymmetryParams> entries;
    for (double h : {0.5, 0.25, 0.125})
      entries.emplace_back(h, vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 1.0);
    auto rows = limit_deficit(LimitKind::L44_47, phi, schedule_from(entries),
                              ModelParams(1.0, 2), TimeQuadrature::simpson(0.4, 96));
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].valid);
      CHECK(rows[i].equivalence_gap <= 1e-6);
      if (i > 0) CHECK(rows[i].direct_deficit < rows[i - 1].direct_deficit);
    }
    CHECK(rows.back().direct_deficit <= 0.2 * rows.back().comparison_norm);
  }

  SUBCASE("L44_48: growing h, bigger box") {
    GridSpec g2(2, 128, 32.0);
    Field phi2 = modulate(gaussian_field(g2, 1.0), {2.0, 0.0});
    std::vector<SymmetryParams> entries;
    for (double h : {2.0, 4.0})
      entries.emplace_back(h, vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 1.0);
    auto rows = limit_deficit(LimitKind::L44_48, phi2, schedule_from(entries),
                              ModelParams(1.0, 2), TimeQuadrature::simpson(1.0, 96));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].direct_deficit < rows[0].direct_deficit);
    for (const auto& r : rows) CHECK(r.equivalence_gap <= 1e-6);
  }

  SUBCASE("constant schedule gives a constant deficit") {
    std::vector<SymmetryParams> entries(
        2, SymmetryParams(0.25, vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 1.0));
    auto rows = limit_deficit(LimitKind::L44_47, phi, schedule_from(entries),
                              ModelParams(1.0, 2), TimeQuadrature::simpson(0.4, 48));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].direct_deficit ==
          doctest::Approx(rows[1].direct_deficit).epsilon(1e-12));
  }

  SUBCASE("hypothesis mismatch is rejected") {
    std::vector<SymmetryParams> entries = {
        SymmetryParams(2.0, vecd{1.0, 0.0}, vecd{0.0, 0.0}, 0.0, 1.0)};
    CHECK_THROWS_AS(limit_deficit(LimitKind::L44_48, phi, schedule_from(entries),
                                  ModelParams(1.0, 2), TimeQuadrature::simpson(0.4, 16)),
                    schema_error);
  }
}

TEST_CASE("orthogonality decay") {
  GridSpec g(2, 64, 32.0);
  ModelParams mu0(0.0, 2);
  Field phiJ = gaussian_field(g, 1.0);
  Field phiK = gaussian_field(g, 1.2);
  auto q = TimeQuadrature::simpson(2.0, 48);

  SUBCASE("constant schedules give a constant table") {
    auto sj = schedule_from(std::vector<SymmetryParams>(
        3, SymmetryParams(1.0, {0.5, 0.0}, {0.0, 0.0}, 0.0, 0.0)));
    auto sk = schedule_from(std::vector<SymmetryParams>(
        3, SymmetryParams(1.0, {0.0, 0.5}, {1.0, 0.0}, 0.0, 0.0)));
    auto rows = orthogonality_decay(phiJ, phiK, sj, sk, mu0, 2.0, q);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows)
      CHECK(r.value == doctest::Approx(rows[0].value).epsilon(1e-12));
  }

  SUBCASE("spatial separation drives the product down") {
    std::vector<SymmetryParams> j, k;
    for (int n = 0; n < 4; ++n) {
      j.emplace_back(1.0, vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 0.0);
      k.emplace_back(1.0, vecd{0.0, 0.0}, vecd{2.0 + 3.0 * n, 0.0}, 0.0, 0.0);
    }
    auto rows = orthogonality_decay(phiJ, phiK, schedule_from(j), schedule_from(k),
                                    mu0, 2.0, q);
    REQUIRE(rows.size() == 4);
    CHECK(rows.back().value < 0.2 * rows.front().value);
    CHECK(rows.back().divergence_total > rows.front().divergence_total);
  }
}
