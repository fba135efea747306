#include <doctest.h>

#include <cmath>
#include <vector>

#include "tarry/random.hpp"
#include "tarry/tarry.hpp"

using namespace tarry;

TEST_CASE("exponents") {
  CHECK(box_volume_exponent(2) == 4);
  CHECK(box_volume_exponent(3) == 10);
  CHECK(critical_exponent(2) == 6);
  CHECK(critical_exponent(3) == 12);
  CHECK(theta_node(16, 16.0) == doctest::Approx(0.01));
  CHECK(w_node(16, 16.0) == doctest::Approx(0.75));
}

TEST_CASE("omega box volume") {
  const OmegaBox b = omega_box_construct(2, 8.0, 0, 0, 0.01);
  CHECK(b.intervals[4].lo == 64.0);
  CHECK(b.intervals[4].hi == 256.0);
  // (2^k - 1) lambda^k * (eps lambda / 2)^2 * (eps / 3)^2
  const double want = 192.0 * std::pow(0.01 * 8.0 / 2.0, 2) * std::pow(0.01 / 3.0, 2);
  CHECK(b.volume == doctest::Approx(want).epsilon(1e-14));
  for (int k : {2, 3}) {
    const double ref = omega_box_construct(k, 8.0, 0, 0, 0.01).volume / std::pow(8.0, box_volume_exponent(k));
    for (double lam : {16.0, 32.0}) {
      const double v = omega_box_construct(k, lam, 3, 5, 0.01).volume;
      CHECK(v / std::pow(lam, box_volume_exponent(k)) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(omega_box_construct(2, 2.0, 0, 0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(omega_box_construct(2, 8.0, 9, 0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(omega_box_construct(2, 8.0, 0, 0, 0.2), std::invalid_argument);
}

TEST_CASE("from_gamma inverts rebase") {
  const OmegaBox b = omega_box_construct(3, 16.0, 7, 11, 0.01);
  const CounterRng rng(5, 1);
  std::vector<double> u(static_cast<std::size_t>(b.basis.size()));
  for (std::size_t c = 0; c < u.size(); ++c) u[c] = rng.uniform(0, c);
  const PhaseCoefficients x = b.point(u);
  const RebasedExpansion g = rebase(x, b.theta, b.w);
  for (int i = 0; i < b.basis.size(); ++i) {
    const auto [kp, l] = b.basis[i];
    const double want = b.intervals[static_cast<std::size_t>(i)].lo +
                        u[static_cast<std::size_t>(i)] * b.intervals[static_cast<std::size_t>(i)].length();
    CHECK(g.gamma[static_cast<std::size_t>(kp)].coeff(static_cast<std::size_t>(l)) ==
          doctest::Approx(want).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("omega membership") {
  const double lam = 16.0;
  const OmegaBox b = omega_box_construct(2, lam, 0, 0, 0.01);
  CHECK(omega_membership(b.center(), 2, lam, 0, 0, 0.01));

  PhaseCoefficients low = b.center();
  std::vector<double> c(low.coeffs().begin(), low.coeffs().end());
  c[4] = std::pow(lam, 2) / 2.0;
  CHECK_FALSE(omega_membership(PhaseCoefficients(b.basis, c), 2, lam, 0, 0, 0.01));

  const CounterRng rng(9, 2);
  int inside = 0;
  int other = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    std::vector<double> u(5);
    for (std::size_t j = 0; j < 5; ++j) u[j] = rng.uniform(i, j);
    const PhaseCoefficients x = b.point(u);
    inside += omega_membership(x, 2, lam, 0, 0, 0.01) ? 1 : 0;
    other += omega_membership(x, 2, lam, 16, 16, 0.01) ? 1 : 0;
    other += omega_membership(x, 2, lam, 1, 0, 0.01) ? 1 : 0;
    other += omega_membership(x, 2, lam, 0, 1, 0.01) ? 1 : 0;
  }
  CHECK(inside == 2000);
  CHECK(other == 0);
}

TEST_CASE("extension values") {
  const std::vector<double> zero(5, 0.0);
  const QuadResult z = extension_value(2, zero);
  CHECK(std::abs(z.value - cplx(1.0, 0.0)) < 1e-12);

  std::vector<double> lin(5, 0.0);
  lin[3] = 10.5;
  CHECK(std::abs(extension_value(2, lin).value) ==
        doctest::Approx(2.0 / (21.0 * std::numbers::pi)).epsilon(1e-9));

  // x1 = 64: int_0^1 e(64 t^2) dt = (C(16) + i S(16)) / 16
  std::vector<double> sq(5, 0.0);
  sq[4] = 64.0;
  const QuadResult f = extension_value(2, sq);
  CHECK(f.value.real() == doctest::Approx(0.03124845399728127620).epsilon(1e-9));
  CHECK(f.value.imag() == doctest::Approx(0.03000660777380631405).epsilon(1e-9));
  CHECK_THROWS_AS(extension_value(2, std::vector<double>(9, 0.0)), std::invalid_argument);
}

TEST_CASE("sheared and direct routes agree inside a box") {
  const OmegaBox b = omega_box_construct(2, 8.0, 3, 5, 0.01);
  const std::vector<double> u{0.2, 0.9, 0.4, 0.7, 0.1};
  const PhaseCoefficients x = b.point(u);
  const QuadResult d = extension_value(2, x.coeffs(), 1e-10);
  const QuadResult s = extension_value_near(x, b.theta, b.w, 1e-10);
  CHECK(d.ok);
  CHECK(s.ok);
  CHECK(std::abs(d.value - s.value) < 1e-9);
  CHECK(std::abs(s.value) <= 1.0);
}

TEST_CASE("field check") {
  const auto rows = omega_field_check(2, 8.0, 0.01, {{0, 0}, {8, 8}}, 50, 3);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.failures == 0);
    CHECK(r.min_scaled > 0.1);
    CHECK(r.min_scaled <= r.median_scaled);
    CHECK(r.median_scaled <= 8.0);
  }
  CHECK_THROWS_AS(omega_field_check(2, 8.0, 0.01, {{0, 0}}, 10, 3), std::invalid_argument);
}

TEST_CASE("ledger rows") {
  const auto rows = divergence_ledger(2, 6.0, {8.0, 16.0}, 0.01, 20, 4);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].box_volume / rows[0].box_volume == doctest::Approx(16.0));
  for (const auto& r : rows) {
    CHECK(r.failures == 0);
    CHECK(r.contribution ==
          doctest::Approx((r.lambda + 1) * (r.lambda + 1) * r.box_volume *
                          std::pow(r.median_abs_e, 6.0)));
  }
  const auto again = divergence_ledger(2, 6.0, {8.0, 16.0}, 0.01, 20, 4);
  CHECK(again[1].contribution == rows[1].contribution);
}

TEST_CASE("mass curve") {
  CHECK(ball_volume(2, 1.0) == doctest::Approx(std::numbers::pi));
  CHECK(ball_volume(5, 2.0) == doctest::Approx(8.0 * std::pow(std::numbers::pi, 2) / 15.0 * 32.0));
  const MassCurve m = mass_curve(1, 2, 4.0, {0.01, 2.0, 4.0}, 1000, 7);
  REQUIRE(m.estimate.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m.estimate[i] <= ball_volume(2, m.R[i]));
    if (i > 0) CHECK(m.estimate[i] >= m.estimate[i - 1]);
  }
  // |E| = 1 - O(R^2) near the origin
  CHECK(m.estimate[0] == doctest::Approx(ball_volume(2, 0.01)).epsilon(1e-3));
  const MassCurve m2 = mass_curve(2, 2, 6.0, {1.0, 2.0}, 1000, 7);
  CHECK(m2.estimate[1] <= ball_volume(5, 2.0));
  CHECK(m2.failures == 0);
  CHECK_THROWS_AS(mass_curve(1, 2, 4.0, {2.0, 1.0}, 1000, 7), std::invalid_argument);
  CHECK_THROWS_AS(mass_curve(2, 4, 4.0, {1.0}, 1000, 7), std::invalid_argument);
}

TEST_CASE("parabola shells") {
  // oracle: nested adaptive quadrature in polar coordinates over the full circle
  const auto m = parabola_shell_masses({4.0, 2.0}, {0.0, 0.5, 1.0});
  REQUIRE(m.size() == 2);
  REQUIRE(m[0].size() == 2);
  CHECK(m[0][0] == doctest::Approx(0.42679284791084304).epsilon(1e-10));
  CHECK(m[1][0] > m[0][0]);
  CHECK_THROWS_AS(parabola_shell_masses({4.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("vandermonde cofactors and node order") {
  const std::vector<double> t01{0.0, 1.0};
  const auto v = vandermonde_cofactors(t01);
  CHECK(std::abs(v[0]) == doctest::Approx(1.0));
  CHECK(v[0] == doctest::Approx(-v[1]));

  // v . y = det[1, t, y]
  const std::vector<double> t{0.1, 0.4, 0.9};
  const auto w = vandermonde_cofactors(t);
  const std::vector<double> y{2.0, -1.0, 0.5};
  const double det = (t[1] * y[2] - t[2] * y[1]) - (t[0] * y[2] - t[2] * y[0]) +
                     (t[0] * y[1] - t[1] * y[0]);
  CHECK(w[0] * y[0] + w[1] * y[1] + w[2] * y[2] == doctest::Approx(det));
  // the constant column is annihilated
  CHECK(std::abs(w[0] + w[1] + w[2]) < 1e-15);

  const std::vector<double> eq{0.0, 0.5, 1.0};
  const auto perm = order_nodes(eq);
  std::vector<double> ordered;
  for (int p : perm) ordered.push_back(eq[static_cast<std::size_t>(p)]);
  const auto v2 = vandermonde_cofactors(ordered);
  double vmax = 0.0;
  for (double x : v2) vmax = std::max(vmax, std::abs(x));
  CHECK(std::abs(v2.back()) == doctest::Approx(vmax));
  CHECK(ordered.back() == 0.5);
  CHECK_THROWS_AS(order_nodes(std::vector<double>{0.1, 0.1}), std::invalid_argument);
}

TEST_CASE("dual bound determinants") {
  // exact rational determinants of the row recipe, computed symbolically
  const DeltaTuple t2 = make_delta_tuple(2, 2, 1, 1.0 / 16, 0.1, 0.6);
  CHECK(t2.t == std::vector<double>{1.0, 0.5, 0.75});
  CHECK(t2.s == std::vector<double>{3.0 / 32, 19.0 / 32, 31.0 / 32});
  const DualBound d2 = dual_bound(t2);
  CHECK(std::abs(d2.det_direct) == doctest::Approx(5.0 / 256).epsilon(1e-12));
  CHECK(std::abs(d2.det_blocks) == doctest::Approx(5.0 / 256).epsilon(1e-12));
  CHECK(d2.bound == doctest::Approx(std::pow(1.0 / 16, 3) * 5.0 / 256));
  CHECK_FALSE(d2.degenerate);

  const DeltaTuple t3 = make_delta_tuple(3, 2, 1, 1.0 / 16, 0.1, 0.6);
  const DualBound d3 = dual_bound(t3);
  CHECK(std::abs(d3.det_direct) == doctest::Approx(901.0 / 13436928).epsilon(1e-10));
  CHECK(std::abs(d3.det_blocks) == doctest::Approx(901.0 / 13436928).epsilon(1e-10));
  CHECK(d3.det_bar.size() == 2);
  CHECK(d3.dyadic_exponent.size() == 2);
}

TEST_CASE("equal heights are degenerate") {
  DeltaTuple t;
  t.k = 2;
  t.K = 1;
  t.delta = 1.0 / 8;
  t.t = {0.0, 1.0, 0.5};
  t.s = {0.4375, 0.4375, 0.4375};
  const DualBound d = dual_bound(t);
  // det bar_1 = s * (v_1 + v_2 + v_3) = 0
  CHECK(d.det_bar[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(d.degenerate);
  CHECK(d.bound == 0.0);
}

TEST_CASE("tuple validation") {
  DeltaTuple t;
  t.k = 2;
  t.K = 2;
  t.delta = 1.0 / 8;
  t.t = {0.0, 0.25, 0.5};
  t.s = {0.0625, 0.3125, 0.9375};
  CHECK_NOTHROW(validate(t));
  t.t = {0.0, 0.2, 0.5};
  CHECK_THROWS_AS(validate(t), std::invalid_argument);
  t.t = {0.25, 0.5, 0.75};
  CHECK_THROWS_AS(validate(t), std::invalid_argument);
  t.t = {0.0, 0.25, 0.5};
  t.s = {0.0, 0.3125, 0.9375};
  CHECK_THROWS_AS(validate(t), std::invalid_argument);
}
