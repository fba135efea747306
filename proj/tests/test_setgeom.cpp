#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tarry/random.hpp"
#include "tarry/setgeom.hpp"
#include "tarry/stationary.hpp"

using namespace tarry;

namespace {

PhaseCoefficients random_cubic(std::uint64_t seed) {
  MonomialBasis b(2, 3);
  const CounterRng rng(seed, 21);
  std::vector<double> c(9);
  for (std::size_t i = 0; i < 9; ++i) c[i] = rng.uniform(i, 0, -5.0, 5.0);
  return PhaseCoefficients(b, c);
}

GridSet columns(int m, double a, double b) {
  GridSet g(m);
  for (int j = 0; j < g.side(); ++j)
    for (int i = 0; i < g.side(); ++i) {
      const double c = (i + 0.5) * g.h();
      if (c >= a && c <= b) g.set(i, j);
    }
  return g;
}

GridSet unite(const GridSet& a, const GridSet& b) {
  GridSet out(a.m());
  for (int j = 0; j < a.side(); ++j)
    for (int i = 0; i < a.side(); ++i)
      if (a(i, j) || b(i, j)) out.set(i, j);
  return out;
}

}  // namespace

TEST_CASE("grid sets") {
  CHECK_THROWS(GridSet(5));
  CHECK_THROWS(GridSet(15));
  const auto f = GridSet::full(6);
  CHECK(f.measure() == 1.0);
  CHECK(f.count() == 64 * 64);
  CHECK_FALSE(f.contains(-1, 0));
  CHECK_FALSE(f.contains(0, 64));
}

TEST_CASE("stationary grid sets") {
  MonomialBasis b2(2, 2);
  CHECK(stationary_gridset(PhaseCoefficients(b2), -0.5, 1.0, 8).measure() == 1.0);

  PhaseCoefficients lin(MonomialBasis(2, 1));
  lin.set({1, 0}, 10.5);
  const PhaseSamples s(lin);
  const auto mu = sup_window_measure(s, 1.0).mu_star;
  const auto g = stationary_gridset(lin, mu, 1.0, 10);
  CHECK(std::abs(g.measure() - 1.0 / 10.5) <= 2.0 / 1024);

  // 4 (xi1 - 1/2)^2 <= 1 everywhere on the square
  PhaseCoefficients well(b2);
  well.set({2, 0}, 4.0);
  well.set({1, 0}, -4.0);  // 4 (xi1 - 1/2)^2 - 1
  CHECK(stationary_gridset(well, -1.0, 1.0, 9).measure() == 1.0);
  CHECK(stationary_gridset(well, -1.0, 0.25, 9).measure() ==
        doctest::Approx(0.5).epsilon(0.01));

  CHECK_THROWS(stationary_gridset(lin, 0.0, 1.0, 15));
}

TEST_CASE("shifted cores") {
  const int m = 10;
  const double h = 1.0 / 1024;
  const auto full = GridSet::full(m);
  for (int k : {1, 2, 3}) {
    const auto c = shifted_core(full, 8 * h, k);
    const double side = 1.0 - k * 8 * h;
    CHECK(c.core.measure() == doctest::Approx(side * side).epsilon(1e-12));
    CHECK_FALSE(c.trivial);
    CHECK_FALSE(c.vacuous);
  }
  const auto half = columns(m, 0.0, 0.5);
  const auto hc = shifted_core(half, 2 * h, 2);
  CHECK(hc.shift_cells == 2);
  // xi1 <= 0.5 - 4h and xi2 <= 1 - 4h
  CHECK(hc.core.measure() == doctest::Approx((0.5 - 4 * h) * (1 - 4 * h)).epsilon(1e-12));
  CHECK(hc.core.measure() <= half.measure());

  const auto t = shifted_core(half, 0.3 * h, 2);
  CHECK(t.trivial);
  CHECK(t.core == half);
  const auto v = shifted_core(full, 0.5, 2);
  CHECK(v.vacuous);
  CHECK(v.core.count() == 0);
  // snapping rounds down
  CHECK(shifted_core(full, 2.7 * h, 1).shift_cells == 2);
}

TEST_CASE("shifted core keeps most of a large stationary set") {
  // delta = 0.05, shift = 0.01 delta, m = 12 so that the shift is two cells
  const double delta = 0.05;
  int tested = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto x = random_cubic(seed);
    SampleOptions o;
    o.budget = 1 << 20;
    const auto mu = sup_window_measure(x, 1.0, o).mu_star;
    const auto g = stationary_gridset(x, mu, 1.0, 12);
    if (g.measure() <= delta) continue;
    ++tested;
    const auto c = shifted_core(g, 0.01 * delta, 3);
    CHECK(c.shift_cells == 2);
    CHECK(c.core.measure() > delta / 2);
    CHECK(c.core.measure() <= g.measure());
  }
  CHECK(tested >= 3);
}

TEST_CASE("strip census") {
  const auto full = GridSet::full(8);
  const auto c = strip_census(full, 16);
  CHECK(c.hit_count == 16);
  for (double v : c.per_strip_measure) CHECK(v == doctest::Approx(1.0 / 16));

  const auto strip = columns(8, 0.0, 1.0 / 16);
  CHECK(strip_census(strip, 16).hit_count == 1);

  // diagonal band |xi1 - xi2| <= 0.1, per-strip oracle is the 1-d overlap
  // length integrated over the strip
  GridSet band(10);
  for (int j = 0; j < 1024; ++j)
    for (int i = 0; i < 1024; ++i)
      if (std::abs(i - j) * band.h() <= 0.1) band.set(i, j);
  const auto bc = strip_census(band, 8);
  CHECK(bc.hit_count == 8);
  double total = 0.0;
  for (int s = 0; s < 8; ++s) {
    double want = 0.0;
    for (int i = s * 128; i < (s + 1) * 128; ++i) {
      const double t = (i + 0.5) / 1024;
      want += (std::min(1.0, t + 0.1) - std::max(0.0, t - 0.1)) / 1024;
    }
    CHECK(bc.per_strip_measure[static_cast<std::size_t>(s)] == doctest::Approx(want).epsilon(0.02));
    total += bc.per_strip_measure[static_cast<std::size_t>(s)];
  }
  CHECK(total == doctest::Approx(band.measure()).epsilon(1e-14));

  CHECK_THROWS(strip_census(full, 3));
  CHECK_THROWS(strip_census(full, 512));
}

TEST_CASE("projection intervals") {
  const auto p = projection_intervals(GridSet::full(7));
  REQUIRE(p.size() == 1);
  CHECK(p[0].first == 0.0);
  CHECK(p[0].second == 1.0);

  const auto two = unite(columns(8, 0.0, 0.25), columns(8, 0.5, 0.75));
  const auto q = projection_intervals(two);
  REQUIRE(q.size() == 2);
  CHECK(q[0].second == 0.25);
  CHECK(q[1].first == 0.5);
  CHECK(q[1].second == 0.75);
  CHECK(projection_intervals(GridSet(6)).empty());
}

TEST_CASE("projection interval counts under refinement") {
  int stable = 0;
  const int n = 20;
  for (std::uint64_t seed = 0; seed < n; ++seed) {
    const auto x = random_cubic(100 + seed);
    const auto mu = sup_window_measure(x, 1.0).mu_star;
    const auto a = projection_intervals(stationary_gridset(x, mu, 1.0, 10)).size();
    const auto b = projection_intervals(stationary_gridset(x, mu, 1.0, 11)).size();
    if (a == b) ++stable;
  }
  CHECK(stable >= 18);
}

TEST_CASE("horizontal dilation of column sets") {
  const double h = 1.0 / 1024;
  const auto g = unite(columns(10, 0.1, 0.3), columns(10, 0.6, 0.62));
  const int ends = 2 * static_cast<int>(projection_intervals(g).size());
  for (double s : {4 * h, 32 * h, 0.05}) {
    const auto grown = difference(dilate_horizontal(g, s), g);
    CHECK(grown.measure() <= ends * s + 2 * h);
  }
  // a set touching the border only grows inwards
  const auto edge = columns(10, 0.0, 0.5);
  CHECK(difference(dilate_horizontal(edge, 8 * h), edge).measure() ==
        doctest::Approx(8 * h).epsilon(1e-12));
}

TEST_CASE("lagrange window check") {
  const auto z = PhaseCoefficients(MonomialBasis(2, 2));
  const auto w0 = lagrange_window_check(z, GridSet::full(8), 1.0 / 32, 0.0);
  CHECK(w0.max_deviation == 0.0);
  CHECK(w0.squares_checked == 32 * 32);

  PhaseCoefficients lin(MonomialBasis(2, 1));
  lin.set({1, 0}, 10.5);
  const double mu = sup_window_measure(lin, 1.0).mu_star;
  const auto g = stationary_gridset(lin, mu, 1.0, 10);
  const auto w = lagrange_window_check(lin, g, 1.0 / 32, mu);
  CHECK(w.max_deviation <= 1.0 + 10.5 * (1.0 / 32 + 1.0 / 1024));
  CHECK(w.max_deviation >= 1.0);

  const auto e = lagrange_window_check(lin, GridSet(8), 1.0 / 32, mu);
  CHECK(e.empty_core);
  CHECK(e.max_deviation == 0.0);
  CHECK_THROWS(lagrange_window_check(lin, g, 0.3 / 1024, mu));
}

TEST_CASE("pbm export") {
  GridSet g(6);
  g.set(0, 63);
  g.set(9, 0);
  std::ostringstream out;
  write_pbm(out, g);
  const std::string s = out.str();
  const std::string header = "P4\n64 64\n";
  REQUIRE(s.size() == header.size() + 64 * 8);
  CHECK(s.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(s[header.size()]) == 0x80);                // top row
  CHECK(static_cast<unsigned char>(s[header.size() + 63 * 8 + 1]) == 0x40);  // bottom row
}
