#include "tarry/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tarry/parallel.hpp"
#include "tarry/random.hpp"

namespace tarry {

namespace {

constexpr std::uint64_t kSampleStream = 0x5a;

int grid_exponent(std::uint64_t budget) {
  int m = 5;
  while (m < 14 && (std::uint64_t{1} << (2 * m)) < budget) ++m;
  return m;
}

double gradient_bound(const PhaseCoefficients& x) {
  double g = 0.0;
  for (int i = 0; i < x.basis().size(); ++i) g += std::abs(x[i]) * x.basis()[i].degree();
  return g;
}

}  // namespace

const char* to_string(VolumeMethod m) {
  return m == VolumeMethod::grid ? "grid" : "montecarlo";
}

VolumeMethod volume_method_from_string(const std::string& s) {
  if (s == "grid") return VolumeMethod::grid;
  if (s == "montecarlo") return VolumeMethod::montecarlo;
  throw std::invalid_argument("unknown volume method: " + s);
}

PhaseSamples::PhaseSamples(const PhaseCoefficients& x, const SampleOptions& opts)
    : phase_(x), opts_(opts) {
  if (opts.budget < 1000) throw std::invalid_argument("sample budget must be >= 1000");
  if (opts.method == VolumeMethod::grid) {
    side_ = 1 << grid_exponent(opts.budget);
    const auto n = static_cast<std::size_t>(side_);
    values_.resize(n * n);
    const double h = 1.0 / side_;
    parallel_for(n, [&](std::size_t j) {
      const double xi2 = (static_cast<double>(j) + 0.5) * h;
      for (std::size_t i = 0; i < n; ++i)
        values_[j * n + i] = eval_phase(phase_, {(static_cast<double>(i) + 0.5) * h, xi2});
    });
  } else {
    const CounterRng rng(opts.seed, kSampleStream);
    values_.resize(opts.budget);
    parallel_for(values_.size(), [&](std::size_t i) {
      values_[i] = eval_phase(phase_, {rng.uniform(i, 0), rng.uniform(i, 1)});
    });
  }
  std::sort(values_.begin(), values_.end());
}

double PhaseSamples::fraction(double mu, double c) const {
  const auto lo = std::lower_bound(values_.begin(), values_.end(), mu);
  const auto hi = std::upper_bound(lo, values_.end(), mu + c);
  return static_cast<double>(hi - lo) / static_cast<double>(values_.size());
}

VolumeEstimate PhaseSamples::window(double mu, double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("window width must be positive");
  VolumeEstimate v;
  v.value = fraction(mu, c);
  v.method = opts_.method;
  if (opts_.method == VolumeMethod::grid) {
    v.samples_or_resolution = static_cast<std::uint64_t>(side_);
  } else {
    v.samples_or_resolution = values_.size();
    v.seed = opts_.seed;
    v.std_error = std::sqrt(v.value * (1.0 - v.value) / static_cast<double>(values_.size()));
  }
  return v;
}

std::pair<double, double> phase_range(const PhaseCoefficients& x) {
  constexpr int n = 64;
  double lo = 0.0;
  double hi = 0.0;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double v = eval_phase(x, {static_cast<double>(i) / n, static_cast<double>(j) / n});
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const double pad = gradient_bound(x) * std::sqrt(2.0) / (2.0 * n);
  const double l1 = x.l1_norm();
  return {std::max(lo - pad, -l1), std::min(hi + pad, l1)};
}

VolumeEstimate window_volume(const PhaseCoefficients& x, double mu, double c,
                             const SampleOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("window width must be positive");
  return PhaseSamples(x, opts).window(mu, c);
}

SupWindow sup_window_measure(const PhaseSamples& samples, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("window width must be positive");
  const auto [pmin, pmax] = phase_range(samples.phase());
  constexpr int scan = 512;
  const double lo = pmin - c;
  double step = (pmax - lo) / (scan - 1);
  double best_mu = lo;
  double best = -1.0;
  for (int i = 0; i < scan; ++i) {
    const double mu = lo + step * i;
    const double f = samples.fraction(mu, c);
    if (f > best) {
      best = f;
      best_mu = mu;
    }
  }
  for (int round = 0; round < 3; ++round) {
    const double centre = best_mu;
    const double fine = step / 10.0;
    for (int i = -10; i <= 10; ++i) {
      const double mu = centre + fine * i;
      const double f = samples.fraction(mu, c);
      if (f > best) {
        best = f;
        best_mu = mu;
      }
    }
    step = fine;
  }
  return {best_mu, samples.window(best_mu, c)};
}

SupWindow sup_window_measure(const PhaseCoefficients& x, double c, const SampleOptions& opts) {
  return sup_window_measure(PhaseSamples(x, opts), c);
}

double sup_window_fraction_exact(const PhaseSamples& samples, double c) {
  const auto& v = samples.sorted_values();
  std::size_t best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (j < i) j = i;
    while (j < v.size() && v[j] <= v[i] + c) ++j;
    best = std::max(best, j - i);
  }
  return static_cast<double>(best) / static_cast<double>(v.size());
}

LevelProfile level_profile(const PhaseSamples& samples, double delta0, int n_beta) {
  if (!(delta0 > 0.0 && delta0 < 0.5)) throw std::invalid_argument("delta0 must lie in (0, 0.5)");
  const auto [pmin, pmax] = phase_range(samples.phase());
  const double lo = pmin - delta0;
  const double hi = pmax + delta0;
  if (n_beta == 0) n_beta = std::max(256, static_cast<int>(std::ceil((hi - lo) * 256.0)) + 1);
  if (n_beta < 64) throw std::invalid_argument("n_beta must be >= 64");
  const double step = (hi - lo) / (n_beta - 1);

  LevelProfile p;
  p.delta0 = delta0;
  p.method = samples.options().method;
  p.seed = samples.options().method == VolumeMethod::montecarlo ? samples.options().seed : 0;
  p.resolution = samples.options().method == VolumeMethod::grid
                     ? static_cast<std::uint64_t>(samples.grid_side())
                     : samples.size();
  double worst_se = 0.0;
  const int total = n_beta + 2;
  p.beta.resize(static_cast<std::size_t>(total));
  p.value.resize(p.beta.size());
  p.std_error.resize(p.beta.size());
  for (int i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    p.beta[idx] = lo + step * (i - 1);
    if (i == 0 || i == total - 1) continue;
    const VolumeEstimate v = samples.window(p.beta[idx] - delta0, 2.0 * delta0);
    p.value[idx] = v.value;
    p.std_error[idx] = v.std_error;
    worst_se = std::max(worst_se, v.std_error);
  }
  p.noise_floor = samples.options().method == VolumeMethod::grid
                      ? 2.0 / static_cast<double>(samples.grid_side())
                      : 3.0 * worst_se;
  return p;
}

LevelProfile level_profile(const PhaseCoefficients& x, double delta0, int n_beta,
                           const SampleOptions& opts) {
  return level_profile(PhaseSamples(x, opts), delta0, n_beta);
}

MonotonicityReport monotonicity_changes(const LevelProfile& profile, double tolerance) {
  if (profile.value.size() < 2) throw std::invalid_argument("profile is empty");
  if (!(tolerance >= 0.0 && tolerance <= 0.1))
    throw std::invalid_argument("tolerance must lie in [0, 0.1]");
  MonotonicityReport r;
  r.tolerance = tolerance;
  const auto& v = profile.value;
  const double vmax = *std::max_element(v.begin(), v.end());
  const double flat = std::max(tolerance * vmax, profile.noise_floor);
  int dir = 0;
  double lo = v[0];
  double hi = v[0];
  std::size_t ext = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (dir == 0) {
      lo = std::min(lo, v[i]);
      hi = std::max(hi, v[i]);
      if (v[i] - lo > flat || hi - v[i] > flat) {
        dir = v[i] - lo > flat ? 1 : -1;
        ext = i;
      }
      continue;
    }
    if (dir * (v[i] - v[ext]) > 0.0) {
      ext = i;
    } else if (dir * (v[ext] - v[i]) > flat) {
      ++r.change_count;
      r.breakpoints.push_back(profile.beta[ext]);
      dir = -dir;
      ext = i;
    }
  }
  return r;
}

Reconstruction stationary_reconstruct(const PhaseSamples& samples, double delta0, int n_beta) {
  Reconstruction out;
  out.profile = level_profile(samples, delta0, n_beta);
  const auto& beta = out.profile.beta;
  const auto& val = out.profile.value;
  const std::size_t n = beta.size();
  const double step = beta[1] - beta[0];
  const double norm = std::sin(2.0 * std::numbers::pi * delta0) / std::numbers::pi;

  // Trapezoid weights times e(beta); the profile vanishes at both ends.
  std::vector<cplx> we(n);
  for (std::size_t i = 0; i < n; ++i)
    we[i] = (i == 0 || i + 1 == n ? 0.5 : 1.0) * step * e(beta[i]);
  for (std::size_t i = 0; i < n; ++i) out.value += val[i] * we[i];
  out.value /= norm;

  if (samples.options().method == VolumeMethod::montecarlo) {
    // The estimate is the sample mean of g(v) = sum over grid points within
    // delta0 of v of we[i] / norm; its spread gives the standard error.
    std::vector<cplx> prefix(n + 1);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + we[i];
    const auto& v = samples.sorted_values();
    double s2 = 0.0;
    for (const double x : v) {
      const auto a = std::lower_bound(beta.begin(), beta.end(), x - delta0) - beta.begin();
      const auto b = std::upper_bound(beta.begin(), beta.end(), x + delta0) - beta.begin();
      const cplx g = (prefix[static_cast<std::size_t>(b)] - prefix[static_cast<std::size_t>(a)]) / norm;
      s2 += std::norm(g - out.value);
    }
    const auto m = static_cast<double>(v.size());
    out.std_error = std::sqrt(s2 / (m - 1.0) / m);
  }
  return out;
}

Reconstruction stationary_reconstruct(const PhaseCoefficients& x, double delta0, int n_beta,
                                      const SampleOptions& opts) {
  return stationary_reconstruct(PhaseSamples(x, opts), delta0, n_beta);
}

Theorem1Ratio theorem1_ratio(const PhaseCoefficients& x, double tol, const SampleOptions& opts) {
  Theorem1Ratio r;
  const QuadResult q = direct_integral_2d(x, tol);
  r.quadrature_ok = q.ok;
  r.integral_modulus = std::abs(q.value);
  r.sup_measure = sup_window_measure(x, 1.0, opts).measure.value;
  r.ratio = r.integral_modulus / r.sup_measure;
  return r;
}

}  // namespace tarry
