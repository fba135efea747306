#include "tarry/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "tarry/random.hpp"

namespace tarry {

namespace {

struct GaussLegendre16 {
  std::array<double, 16> x{};
  std::array<double, 16> w{};

  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = -z;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre16& rule() {
  static const GaussLegendre16 r;
  return r;
}

// Adaptive composite GL16. `f(t)` is the integrand, `bound(l, r)` an upper
// bound (in turns) for the phase range on [l, r].
template <typename F, typename Bound>
QuadResult adaptive(F&& f, Bound&& bound, double a, double b, double tol,
                    const QuadOptions& opts) {
  QuadResult res;
  if (!(b > a)) return res;
  const auto& gl = rule();
  const double max_turns = opts.max_phase_variation / (2.0 * std::numbers::pi);

  auto panel = [&](double l, double r) {
    const double m = 0.5 * (l + r);
    const double h = 0.5 * (r - l);
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < 16; ++i) s += gl.w[i] * f(m + h * gl.x[i]);
    return s * h;
  };

  const double len = b - a;
  const double min_width = len * 0x1.0p-48;
  bool capped = false;
  std::vector<std::pair<double, double>> stack;
  stack.emplace_back(a, b);
  while (!stack.empty()) {
    const auto [l, r] = stack.back();
    stack.pop_back();
    const double m = 0.5 * (l + r);
    const bool splittable = !capped && (r - l) > min_width;
    if (splittable && bound(l, r) > 2.0 * max_turns) {
      stack.emplace_back(m, r);
      stack.emplace_back(l, m);
      continue;
    }
    const cplx left = panel(l, m);
    const cplx right = panel(m, r);
    const cplx whole = panel(l, r);
    const double err = std::abs(left + right - whole);
    if (splittable && err > tol * (r - l) / len) {
      stack.emplace_back(m, r);
      stack.emplace_back(l, m);
      continue;
    }
    res.value += left + right;
    res.est_error += err;
    res.panels += 2;
    if (res.panels >= opts.max_panels && !stack.empty()) {
      capped = true;
      res.ok = false;
    }
  }
  return res;
}

double poly_range_bound(const Poly1& q, double lo, double hi) {
  // Taylor coefficients about the midpoint, scaled to v in [-1, 1].
  const double m = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const auto c = q.coeffs();
  const int n = static_cast<int>(c.size()) - 1;
  double bound = 0.0;
  double hp = 1.0;
  for (int i = 1; i <= n; ++i) {
    hp *= h;
    double s = 0.0;
    double binom = 1.0;
    double mp = 1.0;
    for (int a = i; a <= n; ++a) {
      s += c[static_cast<std::size_t>(a)] * binom * mp;
      binom = binom * (a + 1) / (a + 1 - i);
      mp *= m;
    }
    bound += (i % 2 == 1 ? 2.0 : 1.0) * std::abs(s) * hp;
  }
  return bound;
}

QuadResult integrate_1d(const Poly1& q, double a, double b, double tol,
                        const QuadOptions& opts) {
  return adaptive([&q](double t) { return e(q(t)); },
                  [&q](double l, double r) { return poly_range_bound(q, l, r); }, a, b, tol,
                  opts);
}

// Chebyshev interpolant of a complex function on [l, r] from its values at
// first-kind points.
class ChebPanel {
 public:
  static constexpr int kPoints = 24;

  template <typename F>
  ChebPanel(double l, double r, F&& f) : m_(0.5 * (l + r)), h_(0.5 * (r - l)) {
    constexpr int n = kPoints;
    std::array<cplx, n> v;
    for (int j = 0; j < n; ++j)
      v[static_cast<std::size_t>(j)] =
          f(m_ + h_ * std::cos(std::numbers::pi * (j + 0.5) / n));
    for (int k = 0; k < n; ++k) {
      cplx s{0.0, 0.0};
      for (int j = 0; j < n; ++j)
        s += v[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
      c_[static_cast<std::size_t>(k)] = s * (k == 0 ? 1.0 / n : 2.0 / n);
    }
  }

  cplx operator()(double u) const {
    const double x = (u - m_) / h_;
    cplx b1{0.0, 0.0};
    cplx b2{0.0, 0.0};
    for (std::size_t k = c_.size() - 1; k >= 1; --k) {
      const cplx b0 = c_[k] + 2.0 * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return c_[0] + x * b1 - b2;
  }

  /// Size of the last few coefficients, a proxy for the interpolation error.
  double tail() const {
    const std::size_t n = c_.size();
    return std::abs(c_[n - 1]) + std::abs(c_[n - 2]) + std::abs(c_[n - 3]);
  }

 private:
  double m_;
  double h_;
  std::array<cplx, kPoints> c_{};
};

}  // namespace

const std::array<double, 16>& gl16_nodes() { return rule().x; }
const std::array<double, 16>& gl16_weights() { return rule().w; }

QuadResult direct_integral_1d(const Poly1& q, double a, double b, double tol,
                              const QuadOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("direct_integral_1d: need a < b");
  if (!(tol >= 1e-12)) throw std::invalid_argument("direct_integral_1d: tol must be >= 1e-12");
  return integrate_1d(q, a, b, tol, opts);
}

QuadResult direct_integral_2d(const PhaseCoefficients& x, double tol, const QuadOptions& opts) {
  if (x.d() != 2) throw std::invalid_argument("direct_integral_2d: requires d = 2");
  if (!(tol >= 1e-10)) throw std::invalid_argument("direct_integral_2d: tol must be >= 1e-10");
  const BivariatePoly p = x.to_bivariate();
  const double inner_tol = 0.5 * tol;
  double inner_err = 0.0;
  bool inner_ok = true;
  std::size_t inner_panels = 0;
  // The outer measure is 1, so the worst inner error bounds the inner share.
  auto outer = [&](double xi2) {
    const QuadResult in = integrate_1d(p.restrict_second(xi2), 0.0, 1.0, inner_tol, opts);
    inner_err = std::max(inner_err, in.est_error);
    inner_ok = inner_ok && in.ok;
    inner_panels += in.panels;
    return in.value;
  };
  QuadResult res = adaptive(
      outer, [&p](double l, double r) { return p.range_bound_second(l, r); }, 0.0, 1.0,
      0.5 * tol, opts);
  res.est_error += inner_err;
  res.ok = res.ok && inner_ok;
  res.panels += inner_panels;
  return res;
}

QuadResult sheared_integral_2d(const RebasedExpansion& g, double tol, const QuadOptions& opts) {
  if (!(tol >= 1e-10)) throw std::invalid_argument("sheared_integral_2d: tol must be >= 1e-10");
  const BivariatePoly p = g.as_bivariate();
  const double theta = g.theta;
  const double w = g.w;

  // Split off the xi2-free part: P = g0(u) + g1(u, xi2) with g1(u, 0) = 0.
  const Poly1 g0 = p.restrict_second(0.0);
  BivariatePoly g1 = p;
  for (int a = 0; a <= g1.deg(); ++a) g1.at(a, 0) = 0.0;

  // For fixed u the xi2-range is where xi1 = u + w - theta xi2 lies in [0, 1].
  auto limits = [theta, w](double u) -> std::pair<double, double> {
    const double s = u + w;
    if (theta == 0.0) return (s >= 0.0 && s <= 1.0) ? std::pair{0.0, 1.0} : std::pair{0.0, 0.0};
    double lo = (s - 1.0) / theta;
    double hi = s / theta;
    if (theta < 0.0) std::swap(lo, hi);
    return {std::max(0.0, lo), std::min(1.0, hi)};
  };

  std::array<double, 4> cuts{-w, -w + theta, 1.0 - w, 1.0 - w + theta};
  std::sort(cuts.begin(), cuts.end());
  const double total = cuts[3] - cuts[0];
  const double inner_tol = std::max(0.25 * tol, 1e-12);
  const double amp_tol = 0.25 * tol;
  const double min_width = total * 0x1.0p-40;

  QuadResult res;
  std::size_t amp_panels = 0;
  // H(u) = int e(g1(u, xi2)) dxi2 is smooth between the cuts. It is
  // interpolated on panels where g1 moves by at most one turn and then
  // integrated against e(g0(u)) with the ordinary adaptive engine.
  auto amplitude = [&](double u) {
    const auto [lo, hi] = limits(u);
    if (!(hi > lo)) return cplx{0.0, 0.0};
    const QuadResult in = integrate_1d(g1.restrict_first(u), lo, hi, inner_tol, opts);
    res.ok = res.ok && in.ok;
    res.panels += in.panels;
    res.est_error += in.est_error * (hi - lo) / total;
    return in.value;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    std::vector<std::pair<double, double>> stack{{cuts[i], cuts[i + 1]}};
    while (!stack.empty()) {
      const auto [l, r] = stack.back();
      stack.pop_back();
      const double m = 0.5 * (l + r);
      const bool splittable = (r - l) > min_width && amp_panels < opts.max_panels;
      if (splittable && g1.range_bound_first(l, r) > 1.0) {
        stack.emplace_back(m, r);
        stack.emplace_back(l, m);
        continue;
      }
      const ChebPanel h(l, r, amplitude);
      ++amp_panels;
      if (splittable && h.tail() > amp_tol) {
        stack.emplace_back(m, r);
        stack.emplace_back(l, m);
        continue;
      }
      if (!splittable && amp_panels >= opts.max_panels) res.ok = false;
      const QuadResult seg = adaptive(
          [&](double u) { return e(g0(u)) * h(u); },
          [&](double a, double b) { return poly_range_bound(g0, a, b); }, l, r,
          0.5 * tol * (r - l) / total, opts);
      res.value += seg.value;
      res.est_error += seg.est_error + h.tail() * (r - l);
      res.panels += seg.panels;
      res.ok = res.ok && seg.ok;
    }
  }
  return res;
}

std::vector<IkromovRow> ikromov_check(int k, const std::vector<double>& A_list, double epsilon,
                                      int trials, std::uint64_t seed, const QuadOptions& opts) {
  if (k < 1) throw std::invalid_argument("ikromov_check: k must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 0.1))
    throw std::invalid_argument("ikromov_check: epsilon must lie in [0, 0.1]");
  if (trials < 1) throw std::invalid_argument("ikromov_check: trials must be positive");
  constexpr double a = -0.5;
  constexpr double b = 0.75;
  const CounterRng rng(seed, 0x1c0);
  std::vector<IkromovRow> rows;
  rows.reserve(A_list.size() * static_cast<std::size_t>(trials));
  for (double A : A_list) {
    if (!(A >= 4.0)) throw std::invalid_argument("ikromov_check: A must be >= 4");
    for (int t = 0; t < trials; ++t) {
      const auto idx = static_cast<std::uint64_t>(t);
      std::vector<double> c(static_cast<std::size_t>(k + 1), 0.0);
      const double lead =
          std::pow(A, k) + (std::pow(2.0 * A, k) - std::pow(A, k)) * rng.uniform(idx, 0);
      c[static_cast<std::size_t>(k)] = lead;
      for (int j = 1; j < k; ++j)
        c[static_cast<std::size_t>(j)] =
            epsilon * std::pow(A, j) * (2.0 * rng.uniform(idx, static_cast<std::uint64_t>(j)) - 1.0);
      const QuadResult r = direct_integral_1d(Poly1(std::move(c)), a, b, 1e-10, opts);
      rows.push_back({A, epsilon, t, std::abs(r.value) * std::pow(lead, 1.0 / k), r.ok});
    }
  }
  return rows;
}

double relative_spread(const std::vector<IkromovRow>& rows, double A) {
  double sum = 0.0;
  double sum2 = 0.0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.A != A) continue;
    sum += r.product;
    sum2 += r.product * r.product;
    ++n;
  }
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1));
  return std::sqrt(var) / mean;
}

}  // namespace tarry
