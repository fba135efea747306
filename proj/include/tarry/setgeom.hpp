#pragma once

// Bitmap geometry on the dyadic grid of [0,1]^2: stationary sets, their
// shifted cores, strip counts, column projections and the window check.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "tarry/monomial.hpp"

namespace tarry {

/// Subset of [0,1]^2 made of cells of side h = 2^-m, m in [6, 14]. Cell
/// (i, j) is [i h, (i+1) h] x [j h, (j+1) h]; i runs along xi1.
class GridSet {
 public:
  explicit GridSet(int m);
  static GridSet full(int m);

  int m() const { return m_; }
  int side() const { return n_; }
  double h() const { return 1.0 / n_; }

  bool operator()(int i, int j) const {
    return cells_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
                  static_cast<std::size_t>(i)] != 0;
  }
  /// Out-of-range cells read as empty.
  bool contains(int i, int j) const {
    return i >= 0 && j >= 0 && i < n_ && j < n_ && (*this)(i, j);
  }
  void set(int i, int j, bool v = true) {
    cells_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(i)] = v ? 1 : 0;
  }

  std::size_t count() const;
  double measure() const;
  /// True if column i holds at least one set cell.
  bool column_occupied(int i) const;

  friend bool operator==(const GridSet&, const GridSet&) = default;

 private:
  int m_;
  int n_;
  std::vector<std::uint8_t> cells_;
};

/// Cells whose centre satisfies mu <= P(centre) <= mu + c.
GridSet stationary_gridset(const PhaseCoefficients& x, double mu, double c, int m);

struct ShiftedCore {
  GridSet core;
  int shift_cells = 0;
  double shift = 0.0;  // snapped shift actually used
  /// Snapped shift is zero, so the core equals the input.
  bool trivial = false;
  /// k * shift >= 1: every translate leaves the square and the core is empty.
  bool vacuous = false;
};

/// Intersection of the translates G - shift * a over a in {0, ..., k}^2.
/// The shift is snapped down to a whole number of cells.
ShiftedCore shifted_core(const GridSet& g, double shift, int k);

struct StripCensus {
  int K = 0;
  std::vector<double> per_strip_measure;
  int hit_count = 0;
};

/// Measures of G inside the K vertical strips [s/K, (s+1)/K] x [0,1].
/// K must be a power of two no larger than the grid side.
StripCensus strip_census(const GridSet& g, int K);

/// Maximal runs of occupied columns, as sorted disjoint xi1-intervals.
std::vector<std::pair<double, double>> projection_intervals(const GridSet& g);

/// G + [-s, s] x {0} with s snapped down to whole cells.
GridSet dilate_horizontal(const GridSet& g, double s);

/// Cells in a but not in b.
GridSet difference(const GridSet& a, const GridSet& b);

struct WindowCheck {
  double max_deviation = 0.0;
  int squares_checked = 0;
  bool empty_core = false;
};

/// max over delta-squares meeting the core, over a 5 x 5 lattice of sample
/// points in each square (corners included), of |P(xi) - mu|.
WindowCheck lagrange_window_check(const PhaseCoefficients& x, const GridSet& core,
                                  double delta, double mu);

/// Binary PBM (P4); the first image row is the top of the square.
void write_pbm(std::ostream& out, const GridSet& g);

}  // namespace tarry
