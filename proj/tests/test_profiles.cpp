#include "doctest.h"

#include "biharm/profiles.hpp"
#include "helpers.hpp"

using namespace biharm;
using bt::grid64;
using bt::rel_diff;

namespace {

TimeQuadrature quad48(double T = 3.0) { return TimeQuadrature::simpson(T, 48); }

CapDictionary test_dict(const GridSpec& g, const ModelParams& mp) {
  DictionaryOptions opt;
  opt.annulus_min_log2 = 1;
  opt.annulus_max_log2 = 1;  // single annulus |xi| ~ 2
  opt.max_radius_splits = 3;
  opt.cap_diameter_constant = 1.0 / 4.0;
  return CapDictionary::generate(g, mp, opt);
}

// a construction bubble aligned with the dictionary's center lattice
SymmetryParams bubble_params(const GridSpec& g, double h, int k0, int k1, vecd x0,
                             double t0, double mu) {
  const double dxi = g.freq_spacing();
  return SymmetryParams(h, {k0 * dxi, k1 * dxi}, std::move(x0), t0, mu);
}

}  // namespace

TEST_CASE("locate_peak") {
  GridSpec g = grid64();
  ModelParams mu1(1.0, 2);
  auto q = quad48();

  SUBCASE("standing single mode ties to t = 0") {
    const int k = static_cast<int>(std::round(2.0 / g.freq_spacing()));
    Field mode = bt::lattice_mode(g, {k, 0});
    Cap cap({g.freq(k), 0.0}, 0.25);
    PeakLocation p = locate_peak(mode, cap, mu1, q);
    CHECK(p.t_star == 0.0);
    CHECK(p.amplitude > 0.0);
  }

  SUBCASE("launched bubble is refocused at its launch parameter") {
    const double T = 0.5;
    SymmetryParams s = bubble_params(g, 4.0, 10, 0, {0.0, 0.0}, T, 1.0);
    Field w = apply_symmetry(gaussian_field(g, 1.0), s);
    Cap cap({s.xi[0], s.xi[1]}, 0.25);
    PeakLocation p = locate_peak(w, cap, mu1, q);
    const double node_spacing = q.nodes[1] - q.nodes[0];
    CHECK(std::abs(p.t_star - T) <= node_spacing);
  }

  SUBCASE("translation moves the peak exactly") {
    SymmetryParams s0 = bubble_params(g, 4.0, 10, 0, {0.0, 0.0}, 0.0, 1.0);
    SymmetryParams s1 = bubble_params(g, 4.0, 10, 0, {2.0, -1.5}, 0.0, 1.0);
    Field w0 = apply_symmetry(gaussian_field(g, 1.0), s0);
    Field w1 = apply_symmetry(gaussian_field(g, 1.0), s1);
    Cap cap({s0.xi[0], s0.xi[1]}, 0.25);
    PeakLocation p0 = locate_peak(w0, cap, mu1, q);
    PeakLocation p1 = locate_peak(w1, cap, mu1, q);
    CHECK(p1.x_star[0] - p0.x_star[0] == doctest::Approx(2.0));
    CHECK(p1.x_star[1] - p0.x_star[1] == doctest::Approx(-1.5));
  }

  CHECK_THROWS_AS(
      locate_peak(Field::zero(g), Cap({2.0, 0.0}, 0.25), mu1, q),
      degeneracy_error);
}

TEST_CASE("extract_profile") {
  GridSpec g = grid64();
  ModelParams mu1(1.0, 2);

  SUBCASE("construction is recovered when the window acts as the identity") {
    Field phi0 = gaussian_field(g, 1.0);
    SymmetryParams s = bubble_params(g, 4.0, 10, 0, {2.0, -1.5}, 0.4, 1.0);
    Field w = apply_symmetry(phi0, s);
    Cap cap({s.xi[0], s.xi[1]}, 0.25);
    Profile prof = extract_profile(w, cap, s.t0, s.x0, mu1, g.box_length / 8.0);
    // the recovered profile carries the folded modulation when |h xi| < 8
    const double hxi = s.h * norm(s.xi);
    if (hxi >= 8.0) {
      CHECK(prof.classification == Profile::Modulation::xi_large);
      CHECK(rel_diff(prof.phi, phi0) <= 1e-6);
    } else {
      CHECK(prof.classification == Profile::Modulation::xi_zero);
    }
    CHECK(prof.energy == doctest::Approx(1.0).epsilon(1e-4));
  }

  SUBCASE("window kills a far bubble") {
    Field phi0 = gaussian_field(g, 1.0);
    SymmetryParams near = bubble_params(g, 1.0, 0, 0, {0.0, 0.0}, 0.0, 1.0);
    SymmetryParams far = bubble_params(g, 1.0, 0, 0, {12.0, 12.0}, 0.0, 1.0);
    Field w = apply_symmetry(phi0, near) + apply_symmetry(phi0, far);
    Cap cap({0.5, 0.0}, 0.25);  // admissible placeholder; h = 4 window frame
    Profile prof =
        extract_profile(w, Cap({0.5, 0.0}, 1.0), near.t0, near.x0, mu1, 4.0, 8.0);
    // h = 1 extraction frame: window radius 4 keeps the near bubble only
    CHECK(std::abs(std::sqrt(prof.energy) - 1.0) <= 0.05);
    (void)cap;
  }

  SUBCASE("contraction bound") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      Field w = random_field(g, seed, 3.0);
      Cap cap({2.0, 0.0}, 0.25);
      Profile prof = extract_profile(w, cap, 0.1, {1.0, 0.0}, mu1, 4.0);
      CHECK(std::sqrt(prof.energy) <= w.l2_norm() * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("decompose") {
  GridSpec g = grid64();
  ModelParams mu1(1.0, 2);
  CapDictionary dict = test_dict(g, mu1);
  auto q = quad48();
  const ExponentSet ex = ExponentSet::for_dim(2);

  SUBCASE("zero input gives the empty decomposition") {
    DecomposeOptions opt;
    opt.stop_eps = 1e-8;
    DecompositionResult res = decompose(Field::zero(g), mu1, dict, q, opt);
    CHECK(res.profiles.empty());
    CHECK(res.residual.l2_norm() == 0.0);
    CHECK(!res.stagnated);
  }

  SUBCASE("single bubble") {
    Field phi0 = gaussian_field(g, 1.0);
    SymmetryParams s = bubble_params(g, 4.0, 10, 0, {2.0, -1.0}, 0.3, 1.0);
    Field u = apply_symmetry(phi0, s);
    const double eps0 =
        spacetime_norm(u, mu1, ex.deriv_order.value(), ex.p_strichartz.value(), q).value;
    DecomposeOptions opt;
    opt.stop_eps = 0.02 * eps0;
    opt.max_profiles = 3;
    DecompositionResult res = decompose(u, mu1, dict, q, opt);
    REQUIRE(res.profiles.size() == 1);
    CHECK(res.final_strichartz <= 1e-3 * eps0);
    CHECK(res.reconstruction_defect(u) <= 1e-8);
    CHECK(std::abs(res.energy_ledger_defect()) <= 1e-8 * u.l2_norm_sq());
    CHECK(res.profiles[0].energy == doctest::Approx(1.0).epsilon(0.02));
    // recovered parameters match the construction
    CHECK(res.profiles[0].params.h == doctest::Approx(4.0));
    CHECK(std::abs(res.profiles[0].params.t0 - s.t0) <= q.nodes[1] - q.nodes[0]);
  }

  SUBCASE("two separated bubbles come out in energy order") {
    Field phi0 = gaussian_field(g, 1.0);
    SymmetryParams s1 = bubble_params(g, 4.0, 10, 0, {-4.0, 0.0}, 0.0, 1.0);
    SymmetryParams s2 = bubble_params(g, 4.0, -9, 3, {5.0, 4.0}, 0.6, 1.0);
    Field u = apply_symmetry(phi0, s1) + apply_symmetry(phi0 * cd(0.5, 0.0), s2);
    const double eps0 =
        spacetime_norm(u, mu1, ex.deriv_order.value(), ex.p_strichartz.value(), q).value;
    DecomposeOptions opt;
    opt.stop_eps = 0.07 * eps0;
    opt.max_profiles = 4;
    DecompositionResult res = decompose(u, mu1, dict, q, opt);
    REQUIRE(res.profiles.size() == 2);
    CHECK(res.profiles[0].energy > res.profiles[1].energy);
    CHECK(res.profiles[0].energy == doctest::Approx(1.0).epsilon(0.05));
    CHECK(res.profiles[1].energy == doctest::Approx(0.25).epsilon(0.05));
    CHECK(res.reconstruction_defect(u) <= 1e-8);
    CHECK(std::abs(res.energy_ledger_defect()) <= 1e-8 * u.l2_norm_sq());
    // residual decrement recorded per step
    for (const auto& st : res.steps)
      CHECK(st.next_residual_norm <= st.residual_norm * (1.0 + 1e-12));
  }
}

TEST_CASE("weak limit probe") {
  GridSpec g = grid64();
  Field phi = gaussian_field(g, 1.0);
  std::vector<Field> testers = {gaussian_field(g, 1.3),
                                modulate(gaussian_field(g, 1.0), {1.2, 0.0})};

  SUBCASE("identical schedules give constant inner products") {
    std::vector<SymmetryParams> sched(4, SymmetryParams(2.0, {0.8, 0.0}, {1.0, 0.0},
                                                        0.2, 1.0));
    WeakLimitTable t = weak_limit_probe(sched, sched, phi, testers);
    REQUIRE(t.valid_entries == 4);
    for (std::size_t col = 0; col < testers.size(); ++col) {
      const cd expect = inner_product(phi, testers[col]);
      for (const auto& row : t.rows)
        CHECK(std::abs(row[col] - expect) <= 1e-10 * std::abs(expect) + 1e-12);
    }
  }

  SUBCASE("scale divergence sends inner products to zero") {
    std::vector<SymmetryParams> a, b;
    for (int n = 0; n < 5; ++n) {
      a.emplace_back(std::ldexp(1.0, n), vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 0.0);
      b.emplace_back(1.0, vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 0.0);
    }
    WeakLimitTable t = weak_limit_probe(a, b, phi, testers);
    REQUIRE(t.valid_entries == 5);
    for (std::size_t col = 0; col < testers.size(); ++col) {
      const double first = std::abs(t.rows[0][col]);
      for (int n = 3; n < 5; ++n)
        CHECK(std::abs(t.rows[n][col]) < std::abs(t.rows[n - 1][col]));
      CHECK(std::abs(t.rows[4][col]) <= 0.05 * first);
    }
  }

  SUBCASE("translation gap converges to the shifted inner product") {
    std::vector<SymmetryParams> a, b;
    const vecd y = {2.0, 0.0};
    for (int n = 0; n < 5; ++n) {
      const double wobble = 1.0 / (n + 1.0);
      a.emplace_back(1.0, vecd{0.0, 0.0}, vecd{y[0] + wobble, y[1]}, 0.0, 0.0);
      b.emplace_back(1.0, vecd{0.0, 0.0}, vecd{0.0, 0.0}, 0.0, 0.0);
    }
    WeakLimitTable t = weak_limit_probe(a, b, phi, testers);
    REQUIRE(t.valid_entries == 5);
    Field shifted = translate(phi, y);
    for (std::size_t col = 0; col < testers.size(); ++col) {
      const cd limit = inner_product(shifted, testers[col]);
      const double err_last = std::abs(t.rows[4][col] - limit);
      const double err_first = std::abs(t.rows[0][col] - limit);
      CHECK(err_last < 0.3 * err_first);
    }
  }
}
