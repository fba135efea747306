#include "tarry/setgeom.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tarry/parallel.hpp"

namespace tarry {

namespace {

int snap_cells(double s, double h) {
  if (!(s >= 0.0)) throw std::invalid_argument("shift must be nonnegative");
  // a small relative slack keeps exact multiples of h from rounding down
  return static_cast<int>(std::floor(s / h * (1.0 + 1e-12)));
}

}  // namespace

GridSet::GridSet(int m) : m_(m) {
  if (m < 6 || m > 14) throw std::invalid_argument("grid exponent must lie in [6, 14]");
  n_ = 1 << m;
  cells_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

GridSet GridSet::full(int m) {
  GridSet g(m);
  std::fill(g.cells_.begin(), g.cells_.end(), std::uint8_t{1});
  return g;
}

std::size_t GridSet::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

double GridSet::measure() const {
  return static_cast<double>(count()) / (static_cast<double>(n_) * static_cast<double>(n_));
}

bool GridSet::column_occupied(int i) const {
  for (int j = 0; j < n_; ++j)
    if ((*this)(i, j)) return true;
  return false;
}

GridSet stationary_gridset(const PhaseCoefficients& x, double mu, double c, int m) {
  GridSet g(m);
  const int n = g.side();
  const double h = g.h();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < n; ++i) {
      const double v = eval_phase(x, {(i + 0.5) * h, (j + 0.5) * h});
      if (v >= mu && v <= mu + c) g.set(i, j);
    }
  });
  return g;
}

ShiftedCore shifted_core(const GridSet& g, double shift, int k) {
  if (k < 1) throw std::invalid_argument("degree must be >= 1");
  ShiftedCore out{GridSet(g.m())};
  const int n = g.side();
  const int sc = snap_cells(shift, g.h());
  out.shift_cells = sc;
  out.shift = sc * g.h();
  if (sc == 0) {
    out.core = g;
    out.trivial = true;
    return out;
  }
  if (static_cast<long>(k) * sc >= n) {
    out.vacuous = true;
    return out;
  }
  // The translate set {0..k}^2 is a product, so intersect along xi1 first.
  GridSet rows(g.m());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i + k * sc < n; ++i) {
      bool all = true;
      for (int a = 0; a <= k && all; ++a) all = g(i + a * sc, j);
      if (all) rows.set(i, j);
    }
  });
  parallel_for(static_cast<std::size_t>(n - k * sc), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < n; ++i) {
      bool all = true;
      for (int a = 0; a <= k && all; ++a) all = rows(i, j + a * sc);
      if (all) out.core.set(i, j);
    }
  });
  return out;
}

StripCensus strip_census(const GridSet& g, int K) {
  if (K < 1 || (K & (K - 1)) != 0 || K > g.side())
    throw std::invalid_argument("K must be a power of two no larger than the grid side");
  StripCensus c;
  c.K = K;
  c.per_strip_measure.assign(static_cast<std::size_t>(K), 0.0);
  const int n = g.side();
  const int width = n / K;
  const double cell = g.h() * g.h();
  for (int s = 0; s < K; ++s) {
    std::size_t hits = 0;
    for (int j = 0; j < n; ++j)
      for (int i = s * width; i < (s + 1) * width; ++i) hits += g(i, j) ? 1 : 0;
    c.per_strip_measure[static_cast<std::size_t>(s)] = static_cast<double>(hits) * cell;
    if (hits > 0) ++c.hit_count;
  }
  return c;
}

std::vector<std::pair<double, double>> projection_intervals(const GridSet& g) {
  std::vector<std::pair<double, double>> out;
  const int n = g.side();
  int start = -1;
  for (int i = 0; i <= n; ++i) {
    const bool occ = i < n && g.column_occupied(i);
    if (occ && start < 0) start = i;
    if (!occ && start >= 0) {
      out.emplace_back(start * g.h(), i * g.h());
      start = -1;
    }
  }
  return out;
}

GridSet dilate_horizontal(const GridSet& g, double s) {
  const int sc = snap_cells(s, g.h());
  const int n = g.side();
  GridSet out(g.m());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    // distance to the nearest set cell on the left and on the right
    int last = -(1 << 30);
    std::vector<int> left(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (g(i, j)) last = i;
      left[static_cast<std::size_t>(i)] = i - last;
    }
    int next = 1 << 30;
    for (int i = n - 1; i >= 0; --i) {
      if (g(i, j)) next = i;
      if (left[static_cast<std::size_t>(i)] <= sc || next - i <= sc) out.set(i, j);
    }
  });
  return out;
}

GridSet difference(const GridSet& a, const GridSet& b) {
  if (a.m() != b.m()) throw std::invalid_argument("grid resolutions differ");
  GridSet out(a.m());
  for (int j = 0; j < a.side(); ++j)
    for (int i = 0; i < a.side(); ++i)
      if (a(i, j) && !b(i, j)) out.set(i, j);
  return out;
}

WindowCheck lagrange_window_check(const PhaseCoefficients& x, const GridSet& core,
                                  double delta, double mu) {
  const int dc = snap_cells(delta, core.h());
  if (dc < 1 || std::abs(dc * core.h() - delta) > 1e-12 * delta)
    throw std::invalid_argument("delta must be a positive multiple of the cell size");
  WindowCheck w;
  const int n = core.side();
  for (int bj = 0; bj < n; bj += dc)
    for (int bi = 0; bi < n; bi += dc) {
      bool meets = false;
      for (int j = bj; j < std::min(n, bj + dc) && !meets; ++j)
        for (int i = bi; i < std::min(n, bi + dc) && !meets; ++i) meets = core(i, j);
      if (!meets) continue;
      ++w.squares_checked;
      for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) {
          const double s = std::min(1.0, (bi + dc * a / 4.0) * core.h());
          const double t = std::min(1.0, (bj + dc * b / 4.0) * core.h());
          w.max_deviation = std::max(w.max_deviation, std::abs(eval_phase(x, {s, t}) - mu));
        }
    }
  w.empty_core = w.squares_checked == 0;
  return w;
}

void write_pbm(std::ostream& out, const GridSet& g) {
  const int n = g.side();
  out << "P4\n" << n << ' ' << n << '\n';
  std::vector<char> row(static_cast<std::size_t>((n + 7) / 8));
  for (int j = n - 1; j >= 0; --j) {
    std::fill(row.begin(), row.end(), 0);
    for (int i = 0; i < n; ++i)
      if (g(i, j)) row[static_cast<std::size_t>(i / 8)] |= static_cast<char>(0x80 >> (i % 8));
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace tarry
