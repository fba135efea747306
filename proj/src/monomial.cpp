#include "tarry/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tarry {

double Poly1::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int Poly1::degree() const {
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
    if (c_[static_cast<std::size_t>(i)] != 0.0) return i;
  return 0;
}

Poly1 Poly1::derivative() const {
  if (c_.size() <= 1) return Poly1({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Poly1(std::move(d));
}

double coeff_l1_norm(const Poly1& poly) {
  double s = 0.0;
  for (double c : poly.coeffs()) s += std::abs(c);
  return s;
}

int basis_dimension(int d, int k) {
  if (d != 1 && d != 2) throw std::invalid_argument("basis_dimension: d must be 1 or 2");
  if (k < 1) throw std::invalid_argument("basis_dimension: k must be >= 1");
  // binom(d + k, k) - 1
  return d == 1 ? k : (k + 1) * (k + 2) / 2 - 1;
}

MonomialBasis::MonomialBasis(int d, int k) : d_(d), k_(k) {
  const int n = basis_dimension(d, k);
  lookup_.assign(static_cast<std::size_t>((k + 1) * (k + 1)), -1);
  order_.reserve(static_cast<std::size_t>(n));
  if (d == 1) {
    for (int a = 1; a <= k; ++a) order_.push_back({a, 0});
  } else {
    for (int a = 0; a <= k; ++a) {
      for (int b = 1; b <= k - a; ++b) order_.push_back({a, b});
      if (a >= 1) order_.push_back({a, 0});
    }
  }
  for (std::size_t i = 0; i < order_.size(); ++i)
    lookup_[static_cast<std::size_t>(order_[i].beta1 * (k + 1) + order_[i].beta2)] =
        static_cast<int>(i);
}

int MonomialBasis::index_of(MultiIndex beta) const {
  if (beta.beta1 < 0 || beta.beta2 < 0 || beta.beta1 > k_ || beta.beta2 > k_) return -1;
  return lookup_[static_cast<std::size_t>(beta.beta1 * (k_ + 1) + beta.beta2)];
}

namespace {

void check_point(const MonomialBasis& basis, Point2 xi) {
  const int dims = basis.d();
  for (int i = 0; i < dims; ++i) {
    const double v = xi[static_cast<std::size_t>(i)];
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("phi: point outside [0,1]^d");
  }
}

// powers[j] = t^j for j = 0..k
std::vector<double> powers(double t, int k) {
  std::vector<double> p(static_cast<std::size_t>(k + 1));
  p[0] = 1.0;
  for (int j = 1; j <= k; ++j) p[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j - 1)] * t;
  return p;
}

}  // namespace

std::vector<double> phi(const MonomialBasis& basis, Point2 xi) {
  check_point(basis, xi);
  const auto p1 = powers(xi[0], basis.k());
  const auto p2 = powers(basis.d() == 2 ? xi[1] : 0.0, basis.k());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(basis.size()));
  for (const auto& b : basis.order())
    out.push_back(p1[static_cast<std::size_t>(b.beta1)] * p2[static_cast<std::size_t>(b.beta2)]);
  return out;
}

BivariatePoly::BivariatePoly(int deg)
    : deg_(deg), c_(static_cast<std::size_t>((deg + 1) * (deg + 1)), 0.0) {}

double BivariatePoly::operator()(double s, double t) const {
  double acc = 0.0;
  for (int a = deg_; a >= 0; --a) {
    double inner = 0.0;
    for (int b = deg_ - a; b >= 0; --b) inner = inner * t + at(a, b);
    acc = acc * s + inner;
  }
  return acc;
}

Poly1 BivariatePoly::restrict_first(double s) const {
  std::vector<double> out(static_cast<std::size_t>(deg_ + 1), 0.0);
  double sp = 1.0;
  for (int a = 0; a <= deg_; ++a) {
    for (int b = 0; b <= deg_ - a; ++b) out[static_cast<std::size_t>(b)] += at(a, b) * sp;
    sp *= s;
  }
  return Poly1(std::move(out));
}

Poly1 BivariatePoly::restrict_second(double t) const {
  std::vector<double> out(static_cast<std::size_t>(deg_ + 1), 0.0);
  for (int a = 0; a <= deg_; ++a) {
    double inner = 0.0;
    for (int b = deg_ - a; b >= 0; --b) inner = inner * t + at(a, b);
    out[static_cast<std::size_t>(a)] = inner;
  }
  return Poly1(std::move(out));
}

BivariatePoly BivariatePoly::transposed() const {
  BivariatePoly t(deg_);
  for (int a = 0; a <= deg_; ++a)
    for (int b = 0; b <= deg_ - a; ++b) t.at(b, a) = at(a, b);
  return t;
}

double BivariatePoly::range_bound_first(double lo, double hi) const {
  // Expand around the midpoint: P(m + h v, t) = sum_i d_i(t) v^i, v in [-1,1].
  // Odd powers sweep [-|d_i|, |d_i|], even powers [0, |d_i|] (or its mirror),
  // and |d_i(t)| <= sum_b |d_{i,b}| for t in [0,1].
  const double m = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double bound = 0.0;
  double hp = 1.0;
  for (int i = 1; i <= deg_; ++i) {
    hp *= h;
    double di = 0.0;
    for (int b = 0; b <= deg_ - i; ++b) {
      // sum_{a >= i} c(a,b) binom(a,i) m^{a-i}
      double s = 0.0;
      double binom = 1.0;
      double mp = 1.0;
      for (int a = i; a <= deg_ - b; ++a) {
        s += at(a, b) * binom * mp;
        binom = binom * (a + 1) / (a + 1 - i);
        mp *= m;
      }
      di += std::abs(s);
    }
    bound += (i % 2 == 1 ? 2.0 : 1.0) * di * hp;
  }
  return bound;
}

double BivariatePoly::range_bound_second(double lo, double hi) const {
  return transposed().range_bound_first(lo, hi);
}

PhaseCoefficients::PhaseCoefficients(MonomialBasis basis, std::vector<double> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != basis_.size())
    throw std::invalid_argument("PhaseCoefficients: length does not match basis");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw std::invalid_argument("PhaseCoefficients: non-finite entry");
}

PhaseCoefficients::PhaseCoefficients(MonomialBasis basis)
    : basis_(std::move(basis)), coeffs_(static_cast<std::size_t>(basis_.size()), 0.0) {}

double PhaseCoefficients::coeff(MultiIndex beta) const {
  const int i = basis_.index_of(beta);
  return i < 0 ? 0.0 : coeffs_[static_cast<std::size_t>(i)];
}

void PhaseCoefficients::set(MultiIndex beta, double value) {
  const int i = basis_.index_of(beta);
  if (i < 0) throw std::invalid_argument("PhaseCoefficients::set: multi-index not in basis");
  if (!std::isfinite(value)) throw std::invalid_argument("PhaseCoefficients::set: non-finite");
  coeffs_[static_cast<std::size_t>(i)] = value;
}

double PhaseCoefficients::l1_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += std::abs(c);
  return s;
}

BivariatePoly PhaseCoefficients::to_bivariate() const {
  BivariatePoly p(basis_.k());
  for (int i = 0; i < basis_.size(); ++i) p.at(basis_[i].beta1, basis_[i].beta2) = (*this)[i];
  return p;
}

void to_json(nlohmann::json& j, const PhaseCoefficients& x) {
  j = nlohmann::json{{"d", x.d()}, {"k", x.k()},
                     {"coeffs", std::vector<double>(x.coeffs().begin(), x.coeffs().end())}};
}

PhaseCoefficients phase_from_json(const nlohmann::json& j) {
  for (const auto& [key, _] : j.items())
    if (key != "d" && key != "k" && key != "coeffs")
      throw std::invalid_argument("phase JSON: unknown key '" + key + "'");
  MonomialBasis basis(j.at("d").get<int>(), j.at("k").get<int>());
  return PhaseCoefficients(basis, j.at("coeffs").get<std::vector<double>>());
}

double eval_phase(const PhaseCoefficients& x, Point2 xi) {
  const int k = x.k();
  if (x.d() == 1) {
    double acc = 0.0;
    for (int a = k; a >= 1; --a) acc = (acc + x.coeff({a, 0})) * xi[0];
    return acc;
  }
  return x.to_bivariate()(xi[0], xi[1]);
}

double RebasedExpansion::operator()(Point2 xi) const {
  const double u = xi[0] + theta * xi[1] - w;
  double acc = 0.0;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) acc = acc * u + (*it)(xi[1]);
  return acc;
}

BivariatePoly RebasedExpansion::as_bivariate() const {
  const int k = static_cast<int>(gamma.size()) - 1;
  BivariatePoly p(k);
  for (int kp = 0; kp <= k; ++kp) {
    const auto& g = gamma[static_cast<std::size_t>(kp)];
    for (int l = 0; l <= k - kp; ++l) p.at(kp, l) = g.coeff(static_cast<std::size_t>(l));
  }
  return p;
}

RebasedExpansion rebase(const PhaseCoefficients& x, double theta, double w) {
  if (x.d() != 2) throw std::invalid_argument("rebase: requires d = 2");
  const int k = x.k();
  // c[a] is the xi2-polynomial multiplying xi1^a.
  std::vector<std::vector<double>> c(static_cast<std::size_t>(k + 1),
                                     std::vector<double>(static_cast<std::size_t>(k + 1), 0.0));
  for (int i = 0; i < x.basis().size(); ++i) {
    const auto& b = x.basis()[i];
    c[static_cast<std::size_t>(b.beta1)][static_cast<std::size_t>(b.beta2)] = x[i];
  }
  // Taylor shift xi1 = u + h(xi2), h = w - theta xi2, by repeated synthetic
  // division: c[j] += h * c[j+1] for j = k-1 .. i, i = 0 .. k-1.
  for (int i = 0; i < k; ++i) {
    for (int j = k - 1; j >= i; --j) {
      auto& dst = c[static_cast<std::size_t>(j)];
      const auto& src = c[static_cast<std::size_t>(j + 1)];
      // src has degree <= k - j - 1, so src * h fits in k - j + 1 slots.
      for (int l = k - j - 1; l >= 0; --l) {
        const double v = src[static_cast<std::size_t>(l)];
        if (v == 0.0) continue;
        dst[static_cast<std::size_t>(l)] += w * v;
        dst[static_cast<std::size_t>(l + 1)] -= theta * v;
      }
    }
  }
  RebasedExpansion out;
  out.theta = theta;
  out.w = w;
  out.gamma.reserve(static_cast<std::size_t>(k + 1));
  for (int kp = 0; kp <= k; ++kp) {
    auto& row = c[static_cast<std::size_t>(kp)];
    row.resize(static_cast<std::size_t>(k - kp + 1));
    out.gamma.emplace_back(std::move(row));
  }
  return out;
}

PhaseCoefficients rescale(const PhaseCoefficients& x, int K) {
  if (x.d() != 2) throw std::invalid_argument("rescale: requires d = 2");
  if (K < 1) throw std::invalid_argument("rescale: K must be >= 1");
  if ((K & (K - 1)) != 0) throw std::invalid_argument("rescale: K must be a power of two");
  std::vector<double> out(x.coeffs().begin(), x.coeffs().end());
  for (int i = 0; i < x.basis().size(); ++i) {
    // Division by an exact power of two.
    out[static_cast<std::size_t>(i)] =
        std::ldexp(out[static_cast<std::size_t>(i)],
                   -x.basis()[i].beta1 * static_cast<int>(std::log2(static_cast<double>(K))));
  }
  return PhaseCoefficients(x.basis(), std::move(out));
}

}  // namespace tarry
