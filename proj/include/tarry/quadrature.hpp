#pragma once

// Direct evaluation of oscillatory integrals of polynomial phases.
//
// Everything is built on one adaptive engine: composite 16-point
// Gauss-Legendre on panels that are bisected until (a) a coefficient-based
// bound on the phase range over the panel is below a threshold and (b) the
// panel-vs-halves difference (Richardson estimate) is within the panel's
// share of the tolerance.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "tarry/monomial.hpp"

namespace tarry {

using cplx = std::complex<double>;

/// e(t) = exp(2 pi i t).
inline cplx e(double t) {
  const double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

struct QuadOptions {
  /// Largest phase variation, in radians, allowed on a leaf panel.
  double max_phase_variation = std::numbers::pi / 4.0;
  std::size_t max_panels = std::size_t{1} << 20;
};

/// Phase variation used by the lattice-scale experiments (one full turn per
/// leaf). A 16-point rule is still exact to roundoff there; the Richardson
/// check keeps verifying it.
inline QuadOptions coarse_panels() {
  QuadOptions o;
  o.max_phase_variation = 2.0 * std::numbers::pi;
  return o;
}

struct QuadResult {
  cplx value{0.0, 0.0};
  double est_error = 0.0;
  std::size_t panels = 0;
  /// False when the panel cap was hit; value is then the best estimate.
  bool ok = true;
};

/// 16-point Gauss-Legendre nodes and weights on [-1, 1].
const std::array<double, 16>& gl16_nodes();
const std::array<double, 16>& gl16_weights();

/// int_a^b e(q(t)) dt.
QuadResult direct_integral_1d(const Poly1& q, double a, double b, double tol,
                              const QuadOptions& opts = {});

/// int_{[0,1]^2} e(P(xi; x)) dxi with xi2 outer and xi1 inner.
QuadResult direct_integral_2d(const PhaseCoefficients& x, double tol,
                              const QuadOptions& opts = {});

/// The same integral computed in the sheared coordinates of a rebased
/// expansion, u = xi1 + theta xi2 - w. The xi2-free part g0(u) of the phase
/// is factored out; the remaining amplitude int e(P - g0) dxi2 is smooth in
/// u, so it is sampled on Chebyshev panels and integrated against e(g0(u)).
/// Cost grows with the xi2-dependence of the rebased coefficients, not with
/// x1, which makes it the route of choice inside the lower-bound boxes.
QuadResult sheared_integral_2d(const RebasedExpansion& g, double tol,
                               const QuadOptions& opts = {});

struct IkromovRow {
  double A = 0.0;
  double epsilon = 0.0;
  int trial = 0;
  double product = 0.0;  // |int_a^b e(q)| * alpha_k^{1/k}
  bool ok = true;
};

/// Samples q(t) = alpha_k t^k + ... + alpha_1 t with A^k <= alpha_k <= (2A)^k
/// and |alpha_j| <= epsilon A^j, integrates over [a, b] = [-0.5, 0.75] and
/// records |integral| * alpha_k^{1/k}. The uniforms are keyed by
/// (seed, trial, coefficient) and shared across A.
std::vector<IkromovRow> ikromov_check(int k, const std::vector<double>& A_list,
                                      double epsilon, int trials, std::uint64_t seed,
                                      const QuadOptions& opts = {});

/// Sample standard deviation over mean of the products recorded for one A.
double relative_spread(const std::vector<IkromovRow>& rows, double A);

}  // namespace tarry
