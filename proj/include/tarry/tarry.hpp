#pragma once

// Experiments around the convergence exponent of Tarry's problem on the
// two-dimensional Parsell-Vinogradov surface: the lower-bound boxes built
// on rebased expansions, the per-scale divergence ledger, L^p mass curves
// and the Vandermonde determinant bound for dual boxes.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tarry/monomial.hpp"
#include "tarry/quadrature.hpp"

namespace tarry {

/// k(k+1)(k+2)/6, the power of lambda in the box volume.
int box_volume_exponent(int k);
/// q_k = k(k+1)(k+2)/6 + 2.
int critical_exponent(int k);

double theta_node(int r, double lambda);    // r / (100 lambda)
double w_node(int r_prime, double lambda);  // 1/4 + r' / (2 lambda)

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Product box in the rebased coordinates gamma_{k',l} around
/// (theta_r, w_r'), indexed like the monomial basis ((k', l) <-> beta).
/// The map gamma -> x is affine, triangular and unimodular, so `volume`
/// is also the volume of the image in coefficient space.
struct OmegaBox {
  int k = 2;
  double lambda = 8.0;
  int r = 0;
  int r_prime = 0;
  double epsilon = 0.01;
  double theta = 0.0;
  double w = 0.25;
  MonomialBasis basis{2, 2};
  std::vector<Interval> intervals;
  double volume = 0.0;

  /// Coefficients x whose rebased expansion has gamma_{k',l} at the given
  /// values (gamma_{0,0} is implied: P has no constant term).
  PhaseCoefficients from_gamma(std::span<const double> gamma) const;
  /// Point with gamma_i = lo_i + u_i (hi_i - lo_i), u in [0,1]^N.
  PhaseCoefficients point(std::span<const double> u) const;
  PhaseCoefficients center() const;
};

OmegaBox omega_box_construct(int k, double lambda, int r, int r_prime, double epsilon);

/// Checks x1 in [lambda^k, (2 lambda)^k], ||gamma_k'|| <= eps lambda^k' for
/// 1 <= k' < k and ||gamma_0 - gamma_0(0)|| <= eps on rebase(x, theta_r, w_r').
bool omega_membership(const PhaseCoefficients& x, int k, double lambda, int r, int r_prime,
                      double epsilon);

/// E 1(x) = int_{[0,1]^2} e(x . phi(xi)) dxi by the direct nested rule.
QuadResult extension_value(int k, std::span<const double> point, double tol = 1e-8,
                           const QuadOptions& opts = {});
/// Same integral through the sheared route around (theta, w).
QuadResult extension_value_near(const PhaseCoefficients& x, double theta, double w,
                                double tol = 1e-8, const QuadOptions& opts = {});

struct FieldRow {
  int r = 0;
  int r_prime = 0;
  double min_scaled = 0.0;     // min over samples of lambda |E|
  double median_scaled = 0.0;  // median over samples of lambda |E|
  int failures = 0;            // quadrature budget failures
};

/// lambda |E 1(x)| for uniform samples x in each listed box.
std::vector<FieldRow> omega_field_check(int k, double lambda, double epsilon,
                                        const std::vector<std::pair<int, int>>& boxes,
                                        int samples, std::uint64_t seed, double tol = 1e-8);

struct LedgerRow {
  double lambda = 0.0;
  double box_volume = 0.0;
  double median_abs_e = 0.0;
  double contribution = 0.0;  // (lambda + 1)^2 |Omega| median(|E|^p)
  int failures = 0;
};

/// Per-scale contribution of the Omega boxes to int |E 1|^p. Box labels
/// and in-box positions are drawn from the same uniforms at every lambda.
std::vector<LedgerRow> divergence_ledger(int k, double p, const std::vector<double>& lambdas,
                                         double epsilon, int samples, std::uint64_t seed,
                                         double tol = 1e-8);

struct MassCurve {
  int d = 2;
  int k = 2;
  double p = 4.0;
  std::vector<double> R;
  std::vector<double> estimate;
  std::vector<double> std_error;
  int samples = 0;  // per shell
  std::uint64_t seed = 0;
  int failures = 0;
};

/// Volume of the Euclidean ball of radius R in R^n.
double ball_volume(int n, double R);

/// Monte Carlo estimate of int_{B_R} |E 1|^p for every R in R_list. Each
/// annulus between consecutive radii gets its own uniform sample, so the
/// curve is nondecreasing; standard errors add in quadrature.
MassCurve mass_curve(int d, int k, double p, const std::vector<double>& R_list, int samples,
                     std::uint64_t seed, double tol = 1e-8);

/// Deterministic shell integrals int_{R_i <= |x| <= R_{i+1}} |E 1(x)|^p for
/// the one-dimensional parabola (d = 1, k = 2), by tensor Gauss-Legendre in
/// polar coordinates. Returns one row per exponent.
std::vector<std::vector<double>> parabola_shell_masses(const std::vector<double>& p_list,
                                                       const std::vector<double>& R_list);

/// Cofactors v with v . y = det[1, t, ..., t^{l-1}, y] over the nodes
/// t_0..t_l (l = t.size() - 1).
std::vector<double> vandermonde_cofactors(std::span<const double> t);

/// Greedy reordering: for l = k down to 1, the node placed at position l is
/// the one whose removal leaves the largest Vandermonde minor, which makes
/// the last entry of v_l as large as possible.
std::vector<int> order_nodes(std::span<const double> t);

struct DeltaTuple {
  int k = 2;
  int K = 1;
  double delta = 1.0 / 64;
  std::vector<double> t;  // node coordinates (xi1)
  std::vector<double> s;  // second coordinates (xi2)
};

/// Throws unless sizes match, nodes are 1/(kK)-separated inside one dyadic
/// interval of length 1/K, and the points lie in [0,1]^2.
void validate(const DeltaTuple& tuple);

/// Tuple with nodes equally spaced by 1/(kK) across the dyadic interval
/// [i/K, (i+1)/K], reordered by order_nodes. s_0 and s_1 are given; each
/// further s_{l+1} maximizes |v_{l+1} . (s_0..s_{l+1})| over a 64-point scan
/// of [0,1] and is moved to the centre of its delta-square.
DeltaTuple make_delta_tuple(int k, int K, int interval, double delta, double s0, double s1);

struct DualBound {
  double bound = 0.0;  // delta^{k(k+1)(k+2)/6 - k + 1} |det|
  double det_direct = 0.0;
  double det_blocks = 0.0;
  double det_vandermonde = 0.0;          // det A_k
  std::vector<double> det_bar;           // det of the l-th diagonal block, l = 1..k-1
  std::vector<int> dyadic_exponent;      // floor(log2 |det_bar[l]|)
  bool degenerate = false;
};

DualBound dual_bound(const DeltaTuple& tuple);

}  // namespace tarry
