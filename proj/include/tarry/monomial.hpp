#pragma once

// Monomial bases for Parsell-Vinogradov embeddings in one and two
// variables, phase polynomials P(xi; x) = x . phi(xi), and the two
// coordinate changes used throughout the library: the shifted-power
// rebasing around (theta, w) and the anisotropic rescale in xi_1.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace tarry {

/// Exponent pair (beta1, beta2). For d = 1 only beta1 is used.
struct MultiIndex {
  int beta1 = 0;
  int beta2 = 0;

  constexpr int degree() const { return beta1 + beta2; }
  friend constexpr bool operator==(MultiIndex, MultiIndex) = default;
};

/// Dense univariate polynomial, coefficients in ascending powers.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  double operator()(double t) const;
  std::size_t size() const { return c_.size(); }
  int degree() const;
  double coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
  std::span<const double> coeffs() const { return c_; }
  std::vector<double>& mutable_coeffs() { return c_; }

  /// Derivative polynomial.
  Poly1 derivative() const;

 private:
  std::vector<double> c_;
};

/// l1 norm of the coefficient vector.
double coeff_l1_norm(const Poly1& poly);

/// N = binom(d + k, k) - 1. Only d in {1, 2} and k >= 1 are supported.
int basis_dimension(int d, int k);

/// Ordered list of monomials xi^beta with 1 <= |beta| <= k.
///
/// For d = 2 the ordering groups monomials by the power of xi_1; inside a
/// group the xi_2 powers come first in increasing order and the pure
/// xi_1 power closes the group:
///   xi2, ..., xi2^k, xi1 xi2, ..., xi1 xi2^{k-1}, xi1, xi1^2 xi2, ..., xi1^k.
/// Every coefficient vector, file and CSV column in the project uses it.
class MonomialBasis {
 public:
  MonomialBasis(int d, int k);

  int d() const { return d_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<MultiIndex>& order() const { return order_; }
  const MultiIndex& operator[](int i) const { return order_[static_cast<std::size_t>(i)]; }

  /// Position of beta in the ordering, or -1 if beta is not a member.
  int index_of(MultiIndex beta) const;

  friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) {
    return a.d_ == b.d_ && a.k_ == b.k_;
  }

 private:
  int d_;
  int k_;
  std::vector<MultiIndex> order_;
  std::vector<int> lookup_;  // (k+1) x (k+1) table, -1 for non-members
};

/// Point of [0,1]^d; the second coordinate is ignored when d = 1.
using Point2 = std::array<double, 2>;

/// phi_{d,k}(xi) in basis order.
std::vector<double> phi(const MonomialBasis& basis, Point2 xi);

/// Dense bivariate polynomial sum c(a, b) xi1^a xi2^b with a + b <= deg.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  explicit BivariatePoly(int deg);

  int deg() const { return deg_; }
  double& at(int a, int b) { return c_[idx(a, b)]; }
  double at(int a, int b) const { return c_[idx(a, b)]; }
  double operator()(double s, double t) const;

  /// Coefficients in the second variable for a fixed first variable.
  Poly1 restrict_first(double s) const;
  /// Coefficients in the first variable for a fixed second variable.
  Poly1 restrict_second(double t) const;

  /// Upper bound for max - min of the polynomial in the FIRST variable over
  /// [lo, hi], uniformly over the second variable in [0, 1].
  double range_bound_first(double lo, double hi) const;
  /// Same with the roles of the variables swapped.
  double range_bound_second(double lo, double hi) const;

  BivariatePoly transposed() const;

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(deg_ + 1) +
           static_cast<std::size_t>(b);
  }
  int deg_ = 0;
  std::vector<double> c_;
};

/// Coefficient vector x over a basis. x1() is the coefficient of xi_1^k.
class PhaseCoefficients {
 public:
  PhaseCoefficients(MonomialBasis basis, std::vector<double> coeffs);
  /// All-zero coefficients.
  explicit PhaseCoefficients(MonomialBasis basis);

  const MonomialBasis& basis() const { return basis_; }
  int d() const { return basis_.d(); }
  int k() const { return basis_.k(); }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

  double coeff(MultiIndex beta) const;
  void set(MultiIndex beta, double value);
  double x1() const { return coeff({basis_.k(), 0}); }

  double l1_norm() const;
  BivariatePoly to_bivariate() const;

 private:
  MonomialBasis basis_;
  std::vector<double> coeffs_;
};

void to_json(nlohmann::json& j, const PhaseCoefficients& x);
PhaseCoefficients phase_from_json(const nlohmann::json& j);

/// Sum_beta x_beta xi^beta.
double eval_phase(const PhaseCoefficients& x, Point2 xi);

/// P(xi; x) written as sum_{k'} gamma[k'](xi2) (xi1 + theta xi2 - w)^{k'}.
struct RebasedExpansion {
  double theta = 0.0;
  double w = 0.0;
  std::vector<Poly1> gamma;

  double operator()(Point2 xi) const;
  /// gamma as a bivariate polynomial in (u, xi2), u = xi1 + theta xi2 - w.
  BivariatePoly as_bivariate() const;
};

RebasedExpansion rebase(const PhaseCoefficients& x, double theta, double w);

/// xbar_beta = x_beta / K^{beta1}, so that P(xi; x) = P((K xi1, xi2); xbar).
PhaseCoefficients rescale(const PhaseCoefficients& x, int K);

}  // namespace tarry
