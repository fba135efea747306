#include "tarry/tarry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#include "tarry/parallel.hpp"
#include "tarry/random.hpp"

namespace tarry {

namespace {

constexpr std::uint64_t kFieldStream = 0xf1e1d;
constexpr std::uint64_t kLedgerStream = 0x1ed9e;
constexpr std::uint64_t kMassStream = 0x3a55;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  return 0.5 * (hi + *std::max_element(v.begin(), mid));
}

void check_box_args(int k, double lambda, int r, int r_prime, double epsilon) {
  if (k < 2) throw std::invalid_argument("omega box: k must be >= 2");
  if (!(lambda >= 4.0)) throw std::invalid_argument("omega box: lambda must be >= 4");
  if (r < 0 || r_prime < 0 || r > lambda || r_prime > lambda)
    throw std::invalid_argument("omega box: labels must lie in [0, lambda]");
  if (!(epsilon > 0.0 && epsilon <= 0.1))
    throw std::invalid_argument("omega box: epsilon must lie in (0, 0.1]");
}

double vandermonde(std::span<const double> t) {
  double v = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) v *= t[j] - t[i];
  return v;
}

std::vector<double> without(std::span<const double> t, std::size_t skip) {
  std::vector<double> out;
  out.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (i != skip) out.push_back(t[i]);
  return out;
}

// v_{l+1} . (s_0..s_{l+1}) over the nodes t_0..t_{l+1}.
double bar_det(std::span<const double> t, std::span<const double> s, int l) {
  const auto n = static_cast<std::size_t>(l + 2);
  const auto v = vandermonde_cofactors(t.first(n));
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += v[j] * s[j];
  return acc;
}

}  // namespace

int box_volume_exponent(int k) { return k * (k + 1) * (k + 2) / 6; }
int critical_exponent(int k) { return box_volume_exponent(k) + 2; }

double theta_node(int r, double lambda) { return r / (100.0 * lambda); }
double w_node(int r_prime, double lambda) { return 0.25 + r_prime / (2.0 * lambda); }

PhaseCoefficients OmegaBox::from_gamma(std::span<const double> gamma) const {
  if (static_cast<int>(gamma.size()) != basis.size())
    throw std::invalid_argument("from_gamma: wrong number of coordinates");
  PhaseCoefficients x(basis);
  std::vector<double> acc(static_cast<std::size_t>(basis.size()), 0.0);
  // gamma_{k',l} xi2^l (xi1 + theta xi2 - w)^k', expanded by the multinomial rule
  for (int idx = 0; idx < basis.size(); ++idx) {
    const int kp = basis[idx].beta1;
    const int l = basis[idx].beta2;
    const double g = gamma[static_cast<std::size_t>(idx)];
    for (int i = 0; i <= kp; ++i)
      for (int j = 0; i + j <= kp; ++j) {
        const int m = kp - i - j;
        const int b = l + j;
        if (i + b == 0) continue;
        const double c = factorial(kp) / (factorial(i) * factorial(j) * factorial(m)) *
                         std::pow(theta, j) * std::pow(-w, m);
        acc[static_cast<std::size_t>(basis.index_of({i, b}))] += g * c;
      }
  }
  return PhaseCoefficients(basis, std::move(acc));
}

PhaseCoefficients OmegaBox::point(std::span<const double> u) const {
  if (u.size() != intervals.size()) throw std::invalid_argument("point: wrong dimension");
  std::vector<double> g(intervals.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = intervals[i].lo + u[i] * intervals[i].length();
  return from_gamma(g);
}

PhaseCoefficients OmegaBox::center() const {
  const std::vector<double> half(intervals.size(), 0.5);
  return point(half);
}

OmegaBox omega_box_construct(int k, double lambda, int r, int r_prime, double epsilon) {
  check_box_args(k, lambda, r, r_prime, epsilon);
  OmegaBox box;
  box.k = k;
  box.lambda = lambda;
  box.r = r;
  box.r_prime = r_prime;
  box.epsilon = epsilon;
  box.theta = theta_node(r, lambda);
  box.w = w_node(r_prime, lambda);
  box.basis = MonomialBasis(2, k);
  box.intervals.resize(static_cast<std::size_t>(box.basis.size()));
  box.volume = 1.0;
  for (int idx = 0; idx < box.basis.size(); ++idx) {
    const int kp = box.basis[idx].beta1;
    Interval& iv = box.intervals[static_cast<std::size_t>(idx)];
    if (kp == k) {
      iv = {std::pow(lambda, k), std::pow(2.0 * lambda, k)};
    } else {
      // k - k' + 1 coefficients share the l1 budget eps lambda^k'
      const double len = epsilon * std::pow(lambda, kp) / (k - kp + 1);
      iv = {-0.5 * len, 0.5 * len};
    }
    box.volume *= iv.length();
  }
  return box;
}

bool omega_membership(const PhaseCoefficients& x, int k, double lambda, int r, int r_prime,
                      double epsilon) {
  if (x.d() != 2 || x.k() != k) return false;
  const RebasedExpansion g = rebase(x, theta_node(r, lambda), w_node(r_prime, lambda));
  const double x1 = g.gamma[static_cast<std::size_t>(k)].coeff(0);
  if (!(x1 >= std::pow(lambda, k) && x1 <= std::pow(2.0 * lambda, k))) return false;
  for (int kp = 1; kp < k; ++kp)
    if (coeff_l1_norm(g.gamma[static_cast<std::size_t>(kp)]) > epsilon * std::pow(lambda, kp))
      return false;
  const Poly1& g0 = g.gamma[0];
  double tail = 0.0;
  for (std::size_t l = 1; l < g0.size(); ++l) tail += std::abs(g0.coeff(l));
  return tail <= epsilon;
}

QuadResult extension_value(int k, std::span<const double> point, double tol,
                           const QuadOptions& opts) {
  MonomialBasis basis(2, k);
  if (static_cast<int>(point.size()) != basis.size())
    throw std::invalid_argument("extension_value: point has the wrong dimension");
  return direct_integral_2d(
      PhaseCoefficients(basis, std::vector<double>(point.begin(), point.end())), tol, opts);
}

QuadResult extension_value_near(const PhaseCoefficients& x, double theta, double w, double tol,
                                const QuadOptions& opts) {
  return sheared_integral_2d(rebase(x, theta, w), tol, opts);
}

std::vector<FieldRow> omega_field_check(int k, double lambda, double epsilon,
                                        const std::vector<std::pair<int, int>>& boxes,
                                        int samples, std::uint64_t seed, double tol) {
  if (samples < 50) throw std::invalid_argument("omega_field_check: samples must be >= 50");
  std::vector<FieldRow> rows;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    const auto [r, rp] = boxes[b];
    const OmegaBox box = omega_box_construct(k, lambda, r, rp, epsilon);
    const CounterRng rng(seed, kFieldStream + b);
    const auto n = static_cast<std::size_t>(samples);
    std::vector<double> scaled(n);
    std::vector<char> ok(n);
    parallel_for(n, [&](std::size_t i) {
      std::vector<double> u(box.intervals.size());
      for (std::size_t c = 0; c < u.size(); ++c) u[c] = rng.uniform(i, c);
      const QuadResult q = extension_value_near(box.point(u), box.theta, box.w, tol,
                                                coarse_panels());
      scaled[i] = lambda * std::abs(q.value);
      ok[i] = q.ok ? 1 : 0;
    });
    FieldRow row;
    row.r = r;
    row.r_prime = rp;
    row.min_scaled = *std::min_element(scaled.begin(), scaled.end());
    row.median_scaled = median(scaled);
    row.failures = static_cast<int>(std::count(ok.begin(), ok.end(), 0));
    rows.push_back(row);
  }
  return rows;
}

std::vector<LedgerRow> divergence_ledger(int k, double p, const std::vector<double>& lambdas,
                                         double epsilon, int samples, std::uint64_t seed,
                                         double tol) {
  if (!(p > 0.0)) throw std::invalid_argument("divergence_ledger: p must be positive");
  if (samples < 1) throw std::invalid_argument("divergence_ledger: samples must be positive");
  const CounterRng rng(seed, kLedgerStream);
  const int n_coords = basis_dimension(2, k);
  std::vector<LedgerRow> rows;
  for (const double lambda : lambdas) {
    const auto n = static_cast<std::size_t>(samples);
    const auto labels = static_cast<int>(std::floor(lambda)) + 1;
    std::vector<double> mod(n);
    std::vector<char> ok(n);
    parallel_for(n, [&](std::size_t i) {
      const int r = std::min(labels - 1, static_cast<int>(rng.uniform(i, 0) * labels));
      const int rp = std::min(labels - 1, static_cast<int>(rng.uniform(i, 1) * labels));
      const OmegaBox box = omega_box_construct(k, lambda, r, rp, epsilon);
      std::vector<double> u(static_cast<std::size_t>(n_coords));
      for (std::size_t c = 0; c < u.size(); ++c) u[c] = rng.uniform(i, 2 + c);
      const QuadResult q = extension_value_near(box.point(u), box.theta, box.w, tol,
                                                coarse_panels());
      mod[i] = std::abs(q.value);
      ok[i] = q.ok ? 1 : 0;
    });
    // every box has the same volume
    const double volume = omega_box_construct(k, lambda, 0, 0, epsilon).volume;
    LedgerRow row;
    row.lambda = lambda;
    row.box_volume = volume;
    row.median_abs_e = median(mod);
    row.contribution = static_cast<double>(labels) * labels * volume *
                       std::pow(row.median_abs_e, p);
    row.failures = static_cast<int>(std::count(ok.begin(), ok.end(), 0));
    rows.push_back(row);
  }
  return rows;
}

double ball_volume(int n, double R) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0) * std::pow(R, n);
}

MassCurve mass_curve(int d, int k, double p, const std::vector<double>& R_list, int samples,
                     std::uint64_t seed, double tol) {
  if (d != 1 && d != 2) throw std::invalid_argument("mass_curve: d must be 1 or 2");
  if (samples < 1000) throw std::invalid_argument("mass_curve: samples must be >= 1000");
  if (!(p > 0.0)) throw std::invalid_argument("mass_curve: p must be positive");
  const MonomialBasis basis(d, k);
  const int n = basis.size();
  if (n > 9) throw std::invalid_argument("mass_curve: dimension above 9 exceeds the budget");
  for (std::size_t i = 0; i < R_list.size(); ++i)
    if (!(R_list[i] > 0.0) || (i > 0 && !(R_list[i] > R_list[i - 1])))
      throw std::invalid_argument("mass_curve: radii must be positive and increasing");

  MassCurve out;
  out.d = d;
  out.k = k;
  out.p = p;
  out.R = R_list;
  out.samples = samples;
  out.seed = seed;
  const CounterRng rng(seed, kMassStream);
  const auto m = static_cast<std::size_t>(samples);
  double total = 0.0;
  double var = 0.0;
  double inner = 0.0;
  for (std::size_t shell = 0; shell < R_list.size(); ++shell) {
    const double outer = R_list[shell];
    const double a = std::pow(inner, n);
    const double b = std::pow(outer, n);
    std::vector<double> val(m);
    std::vector<char> ok(m);
    parallel_for(m, [&](std::size_t i) {
      const std::uint64_t idx = shell * m + i;
      const double rho = std::pow(a + (b - a) * rng.uniform(idx, 0), 1.0 / n);
      std::vector<double> x(static_cast<std::size_t>(n));
      double norm = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) {
        x[c] = rng.normal(idx, 1 + c);
        norm += x[c] * x[c];
      }
      norm = std::sqrt(norm);
      for (double& c : x) c *= rho / norm;
      QuadResult q;
      if (d == 1) {
        std::vector<double> c(x.size() + 1, 0.0);
        std::copy(x.begin(), x.end(), c.begin() + 1);
        q = direct_integral_1d(Poly1(std::move(c)), 0.0, 1.0, tol, coarse_panels());
      } else {
        q = direct_integral_2d(PhaseCoefficients(basis, std::move(x)), tol, coarse_panels());
      }
      val[i] = std::pow(std::abs(q.value), p);
      ok[i] = q.ok ? 1 : 0;
    });
    const double mean = std::accumulate(val.begin(), val.end(), 0.0) / samples;
    double s2 = 0.0;
    for (const double v : val) s2 += (v - mean) * (v - mean);
    const double shell_volume = ball_volume(n, outer) - ball_volume(n, inner);
    total += shell_volume * mean;
    var += shell_volume * shell_volume * s2 / (samples - 1.0) / samples;
    out.estimate.push_back(total);
    out.std_error.push_back(std::sqrt(var));
    out.failures += static_cast<int>(std::count(ok.begin(), ok.end(), 0));
    inner = outer;
  }
  return out;
}

std::vector<std::vector<double>> parabola_shell_masses(const std::vector<double>& p_list,
                                                       const std::vector<double>& R_list) {
  if (R_list.size() < 2) throw std::invalid_argument("parabola_shell_masses: need two radii");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    if (!(R_list[i] > R_list[i - 1]) || !(R_list[0] >= 0.0))
      throw std::invalid_argument("parabola_shell_masses: radii must be increasing");
  const auto& gx = gl16_nodes();
  const auto& gw = gl16_weights();
  const std::size_t shells = R_list.size() - 1;
  std::vector<std::vector<double>> out(p_list.size(), std::vector<double>(shells, 0.0));
  for (std::size_t sh = 0; sh < shells; ++sh) {
    const double r0 = R_list[sh];
    const double r1 = R_list[sh + 1];
    // panels about one unit wide in both radial and arc-length directions
    const int nr = std::max(1, static_cast<int>(std::ceil(r1 - r0)));
    const int nphi = std::max(4, static_cast<int>(std::ceil(std::numbers::pi * r1)));
    const double hr = (r1 - r0) / nr;
    const double hphi = std::numbers::pi / nphi;
    // |E(-x)| = |E(x)|, so half the circle suffices
    std::vector<std::vector<double>> acc(static_cast<std::size_t>(nr),
                                         std::vector<double>(p_list.size(), 0.0));
    parallel_for(static_cast<std::size_t>(nr), [&](std::size_t ir) {
      for (std::size_t a = 0; a < 16; ++a) {
        const double rho = r0 + hr * (static_cast<double>(ir) + 0.5 + 0.5 * gx[a]);
        const double wr = 0.5 * hr * gw[a] * rho;
        for (int ip = 0; ip < nphi; ++ip)
          for (std::size_t b = 0; b < 16; ++b) {
            const double phi = hphi * (ip + 0.5 + 0.5 * gx[b]);
            const double wphi = 0.5 * hphi * gw[b];
            const Poly1 q({0.0, rho * std::cos(phi), rho * std::sin(phi)});
            const double mod =
                std::abs(direct_integral_1d(q, 0.0, 1.0, 1e-10, coarse_panels()).value);
            for (std::size_t ip2 = 0; ip2 < p_list.size(); ++ip2)
              acc[ir][ip2] += 2.0 * wr * wphi * std::pow(mod, p_list[ip2]);
          }
      }
    });
    for (const auto& row : acc)
      for (std::size_t ip2 = 0; ip2 < p_list.size(); ++ip2) out[ip2][sh] += row[ip2];
  }
  return out;
}

std::vector<double> vandermonde_cofactors(std::span<const double> t) {
  if (t.size() < 2) throw std::invalid_argument("vandermonde_cofactors: need two nodes");
  const std::size_t l = t.size() - 1;
  std::vector<double> v(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double minor = vandermonde(without(t, j));
    v[j] = ((j + l) % 2 == 0 ? 1.0 : -1.0) * minor;
  }
  return v;
}

std::vector<int> order_nodes(std::span<const double> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t[i] == t[j]) throw std::invalid_argument("order_nodes: duplicate nodes");
  std::vector<int> perm(t.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t l = t.size() - 1; l >= 1; --l) {
    std::vector<double> cur(l + 1);
    for (std::size_t i = 0; i <= l; ++i) cur[i] = t[static_cast<std::size_t>(perm[i])];
    std::size_t best = l;
    double best_minor = -1.0;
    for (std::size_t j = 0; j <= l; ++j) {
      const double minor = std::abs(vandermonde(without(cur, j)));
      if (minor > best_minor * (1.0 + 1e-12)) {
        best_minor = minor;
        best = j;
      }
    }
    std::swap(perm[best], perm[l]);
  }
  return perm;
}

void validate(const DeltaTuple& tuple) {
  const int k = tuple.k;
  if (k < 2) throw std::invalid_argument("delta tuple: k must be >= 2");
  if (tuple.K < 1 || (tuple.K & (tuple.K - 1)) != 0)
    throw std::invalid_argument("delta tuple: K must be a power of two");
  if (!(tuple.delta > 0.0 && tuple.delta <= 1.0))
    throw std::invalid_argument("delta tuple: delta must lie in (0, 1]");
  const auto n = static_cast<std::size_t>(k + 1);
  if (tuple.t.size() != n || tuple.s.size() != n)
    throw std::invalid_argument("delta tuple: need k + 1 nodes and k + 1 squares");
  const double sep = 1.0 / (static_cast<double>(k) * tuple.K);
  const double lo = *std::min_element(tuple.t.begin(), tuple.t.end());
  const double cell = std::floor(lo * tuple.K * (1.0 + 1e-12));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tuple.t[i];
    if (t < cell / tuple.K - 1e-12 || t > (cell + 1.0) / tuple.K + 1e-12)
      throw std::invalid_argument("delta tuple: nodes leave the dyadic interval");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(t - tuple.t[j]) < sep * (1.0 - 1e-9))
        throw std::invalid_argument("delta tuple: nodes are not separated");
    const double s = tuple.s[i];
    if (s - 0.5 * tuple.delta < -1e-12 || s + 0.5 * tuple.delta > 1.0 + 1e-12 ||
        t < 0.0 || t > 1.0)
      throw std::invalid_argument("delta tuple: square leaves the unit square");
  }
}

DeltaTuple make_delta_tuple(int k, int K, int interval, double delta, double s0, double s1) {
  if (interval < 0 || interval >= K) throw std::invalid_argument("make_delta_tuple: bad interval");
  DeltaTuple tuple;
  tuple.k = k;
  tuple.K = K;
  tuple.delta = delta;
  const auto n = static_cast<std::size_t>(k + 1);
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j)
    t[j] = (interval + static_cast<double>(j) / k) / K;
  const auto perm = order_nodes(t);
  tuple.t.resize(n);
  for (std::size_t j = 0; j < n; ++j) tuple.t[j] = t[static_cast<std::size_t>(perm[j])];

  const double cells = std::round(1.0 / delta);
  auto snap = [&](double s) {
    const double c = std::min(cells - 1.0, std::max(0.0, std::floor(s / delta)));
    return (c + 0.5) * delta;
  };
  tuple.s.assign(n, 0.0);
  tuple.s[0] = snap(s0);
  tuple.s[1] = snap(s1);
  for (int l = 1; l < k; ++l) {
    const auto next = static_cast<std::size_t>(l + 1);
    double best_s = 0.0;
    double best = -1.0;
    for (int i = 0; i < 64; ++i) {
      tuple.s[next] = i / 63.0;
      const double v = std::abs(bar_det(tuple.t, tuple.s, l));
      if (v > best) {
        best = v;
        best_s = tuple.s[next];
      }
    }
    tuple.s[next] = snap(best_s);
  }
  validate(tuple);
  return tuple;
}

DualBound dual_bound(const DeltaTuple& tuple) {
  validate(tuple);
  const int k = tuple.k;
  const MonomialBasis basis(2, k);
  const int n = basis.size();
  const auto& t = tuple.t;
  const auto& s = tuple.s;

  // d^q/ds^q of t^a s^b at node j
  auto deriv = [&](int q, int col, std::size_t j) {
    const int a = basis[col].beta1;
    const int b = basis[col].beta2;
    if (b < q) return 0.0;
    return factorial(b) / factorial(b - q) * std::pow(t[j], a) * std::pow(s[j], b - q);
  };

  Eigen::MatrixXd m(n, n);
  int row = 0;
  for (int j = 1; j <= k; ++j, ++row)
    for (int c = 0; c < n; ++c)
      m(row, c) = deriv(0, c, static_cast<std::size_t>(j)) - deriv(0, c, 0);
  for (int j = 0; j <= k; ++j, ++row)
    for (int c = 0; c < n; ++c) m(row, c) = deriv(1, c, static_cast<std::size_t>(j));
  for (int q = 2; q <= k - 1; ++q)
    for (int j = 1; j <= k + 1 - q; ++j, ++row)
      for (int c = 0; c < n; ++c)
        m(row, c) = deriv(q, c, static_cast<std::size_t>(j)) - deriv(q, c, 0);

  DualBound out;
  out.det_direct = m.fullPivLu().determinant();
  out.det_vandermonde = vandermonde(t);
  out.det_bar.resize(static_cast<std::size_t>(k - 1));
  out.dyadic_exponent.resize(out.det_bar.size());
  for (int l = 1; l <= k - 1; ++l) {
    const double v = bar_det(t, s, l);
    out.det_bar[static_cast<std::size_t>(l - 1)] = v;
    out.dyadic_exponent[static_cast<std::size_t>(l - 1)] =
        v == 0.0 ? std::numeric_limits<int>::min() : static_cast<int>(std::floor(std::log2(std::abs(v))));
  }
  double blocks = out.det_vandermonde * 2.0 * out.det_bar[static_cast<std::size_t>(k - 2)];
  for (int q = 2; q <= k - 1; ++q)
    blocks *= std::pow(factorial(q), k - q) * factorial(q + 1) *
              out.det_bar[static_cast<std::size_t>(k - q - 1)];
  out.det_blocks = blocks;

  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale *= std::max(m.row(i).norm(), 1e-300);
  out.degenerate = std::abs(out.det_direct) < 1e-14 * scale;
  const int power = box_volume_exponent(k) - k + 1;
  out.bound = out.degenerate ? 0.0 : std::pow(tuple.delta, power) * std::abs(out.det_direct);
  return out;
}

}  // namespace tarry
