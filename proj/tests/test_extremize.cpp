#include "doctest.h"

#include "biharm/extremize.hpp"
#include "helpers.hpp"

using namespace biharm;
using bt::grid64;

namespace {
TimeQuadrature quadB(double T = 6.0, int n = 160) { return TimeQuadrature::simpson(T, n); }
}  // namespace

TEST_CASE("ratio") {
  GridSpec g = grid64();
  ModelParams mu0(0.0, 2);
  auto q = quadB(3.0, 72);
  Field f = modulate(gaussian_field(g, 1.1), {0.6, -0.4});

  CHECK_THROWS_AS(strichartz_ratio(Field::zero(g), mu0, q), degeneracy_error);

  const double r1 = strichartz_ratio(f, mu0, q);
  const double r2 = strichartz_ratio(f * cd(2.0, 0.0), mu0, q);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-13));
  CHECK(r1 > 0.0);
}

TEST_CASE("lower bound constant") {
  CHECK(lower_bound_constant(2) ==
        doctest::Approx(std::pow(3.0, -0.125) * std::pow(2.0, -0.25)).epsilon(1e-15));
  CHECK(lower_bound_constant(2) == doctest::Approx(0.73299).epsilon(1e-4));
  double prev = 1.0;
  for (int d = 2; d <= 8; ++d) {
    const double c = lower_bound_constant(d);
    CHECK(c < prev);
    prev = c;
  }
  CHECK(lower_bound_constant(1000000) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
  CHECK_THROWS_AS(lower_bound_constant(1), schema_error);
}

TEST_CASE("ascend") {
  GridSpec g = grid64();
  auto q = quadB();

  SUBCASE("schrodinger branch from a perturbed gaussian stays gaussian") {
    ModelParams mu0(0.0, 2);
    Field init = gaussian_field(g, 1.0) + (random_field(g, 4, 2.0) * cd(0.05, 0.0));
    ExtremizerReport rep =
        ascend(init, mu0, q, 14, 1e-7, PropagatorSpec::schrodinger(+1));
    CHECK(rep.monotone);
    CHECK(!rep.degenerate);
    CHECK(rep.ratio >= rep.iterates.front() - 1e-9);
    CHECK(std::abs(rep.f_star.l2_norm() - 1.0) <= 1e-10);
    // log|f*| is quadratic in x: least-squares fit residual below 1e-2
    GridTables tab(g);
    double peak = 0.0;
    for (const cd& v : rep.f_star.values()) peak = std::max(peak, std::abs(v));
    // fit c0 + c1 x1 + c2 x2 + c3 x1^2 + c4 x2^2 + c5 x1 x2
    std::vector<std::array<double, 6>> rows;
    std::vector<double> ys;
    int m[3];
    for (std::size_t i = 0; i < rep.f_star.values().size(); ++i) {
      const double a = std::abs(rep.f_star.values()[i]);
      if (a < 1e-3 * peak) continue;
      g.axis_indices(i, m);
      const double x1 = tab.coord[m[0]], x2 = tab.coord[m[1]];
      rows.push_back({1.0, x1, x2, x1 * x1, x2 * x2, x1 * x2});
      ys.push_back(std::log(a));
    }
    // normal equations
    double A[6][6] = {};
    double b[6] = {};
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (int i = 0; i < 6; ++i) {
        b[i] += rows[r][i] * ys[r];
        for (int j = 0; j < 6; ++j) A[i][j] += rows[r][i] * rows[r][j];
      }
    }
    // gaussian elimination
    for (int i = 0; i < 6; ++i) {
      int piv = i;
      for (int k = i + 1; k < 6; ++k)
        if (std::abs(A[k][i]) > std::abs(A[piv][i])) piv = k;
      std::swap(A[i], A[piv]);
      std::swap(b[i], b[piv]);
      for (int k = i + 1; k < 6; ++k) {
        const double f = A[k][i] / A[i][i];
        for (int j = i; j < 6; ++j) A[k][j] -= f * A[i][j];
        b[k] -= f * b[i];
      }
    }
    double coef[6];
    for (int i = 5; i >= 0; --i) {
      double s = b[i];
      for (int j = i + 1; j < 6; ++j) s -= A[i][j] * coef[j];
      coef[i] = s / A[i][i];
    }
    double rss = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double pred = 0.0;
      for (int i = 0; i < 6; ++i) pred += coef[i] * rows[r][i];
      rss += (ys[r] - pred) * (ys[r] - pred);
    }
    CHECK(std::sqrt(rss / rows.size()) <= 1e-2);
  }

  SUBCASE("single-mode initializer is flagged degenerate") {
    ModelParams mu1(1.0, 2);
    Field mode = bt::lattice_mode(g, {6, 2});
    ExtremizerReport rep = ascend(mode, mu1, quadB(2.0, 48), 3, 1e-6);
    CHECK(rep.degenerate);
  }

  SUBCASE("iterates are recorded in full") {
    ModelParams mu1(1.0, 2);
    ExtremizerReport rep =
        ascend(gaussian_field(g, 1.2), mu1, quadB(2.0, 48), 5, 1e-12);
    CHECK(rep.iterates.size() >= 6);  // init ratio + per-iteration values
    CHECK(rep.propagator_tag == "fourth_order_mu");
  }
}

TEST_CASE("gaussian B value against the closed form") {
  // |e^{it Delta} psi|_{L^4}^4 for the unit gaussian = (pi/2) Int (1+4t^2)^{-1},
  // truncated to the same window as the quadrature
  GridSpec g = grid64();
  ModelParams mu0(0.0, 2);
  const double T = 6.0;
  auto q = TimeQuadrature::simpson(T, 480);
  Field psi = gaussian_field(g, 1.0);
  const double computed =
      spacetime_norm(psi, mu0, 0.0, 4.0, q, PropagatorSpec::schrodinger(+1)).value;
  const double I = (pi / 2.0) * std::atan(2.0 * T);
  const double closed = std::pow(I, 0.25) / std::sqrt(pi);
  CHECK(computed == doctest::Approx(closed).epsilon(0.01));
}

TEST_CASE("comparison experiment") {
  GridSpec g = grid64();
  ModelParams mu0(0.0, 2);
  auto q = quadB(1.0, 64);
  Field psi = gaussian_field(g, 1.0);

  SUBCASE("constant schedule gives a constant trajectory") {
    std::vector<SymmetryParams> sched(3, SymmetryParams(1.0, {2.0, 0.0}, {0.0, 0.0},
                                                        0.0, 0.0));
    auto rows = comparison_experiment(ComparisonKind::A0_vs_B, psi, sched, mu0, q);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
      CHECK(r.valid);
      CHECK(r.ratio == doctest::Approx(rows[0].ratio).epsilon(1e-12));
    }
  }

  SUBCASE("unit normalization is required") {
    std::vector<SymmetryParams> sched(1, SymmetryParams(1.0, {2.0, 0.0}, {0.0, 0.0},
                                                        0.0, 0.0));
    CHECK_THROWS_AS(
        comparison_experiment(ComparisonKind::A0_vs_B, psi * cd(2.0, 0.0), sched, mu0, q),
        schema_error);
  }
}
