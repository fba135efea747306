#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "harness.hpp"
#include "tarry/io.hpp"
#include "tarry/parallel.hpp"
#include "tarry/random.hpp"
#include "tarry/stationary.hpp"

namespace tarry::harness {

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

constexpr double kPi = std::numbers::pi;

// AC1: reconstruction identity.
Verdict ac1() {
  SampleOptions opts;
  opts.budget = std::uint64_t{1} << 18;
  double worst = -1e300;
  double max_dev = 0.0;
  bool ok = true;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const PhaseCoefficients x = random_phase(3, 5.0, 101, i);
    const QuadResult d = direct_integral_2d(x, 1e-8);
    const Reconstruction r = stationary_reconstruct(PhaseSamples(x, opts), 0.1);
    const double dev = std::abs(r.value - d.value);
    ok = ok && d.ok;
    max_dev = std::max(max_dev, dev);
    worst = std::max(worst, dev - 0.02 - 3.0 * r.std_error);
  }
  return {ok && worst <= 0.0, "200 phases, max |recon - direct| = " + fmt(max_dev)};
}

// AC2: closed forms for P = 10.5 xi1.
Verdict ac2() {
  PhaseCoefficients x(MonomialBasis(2, 2));
  x.set({1, 0}, 10.5);
  const double want = 2.0 / (21.0 * kPi);
  const QuadResult q = direct_integral_2d(x, 1e-10);
  const SupWindow sw = sup_window_measure(x, 1.0);
  const double h = 1.0 / static_cast<double>(sw.measure.samples_or_resolution);
  const Theorem1Ratio t = theorem1_ratio(x);
  const bool pass = std::abs(std::abs(q.value) - want) <= 1e-3 &&
                    std::abs(sw.measure.value - 1.0 / 10.5) <= 2.0 * h &&
                    std::abs(t.ratio - 1.0 / kPi) <= 0.01;
  return {pass, "|I| = " + fmt(std::abs(q.value), 8) + ", sup window = " +
                    fmt(sw.measure.value, 8) + ", ratio = " + fmt(t.ratio, 6)};
}

// AC3: empirical Theorem 1.1 constant.
Verdict ac3(const std::string& dir) {
  SampleOptions opts;
  opts.budget = std::uint64_t{1} << 18;
  double worst = 0.0;
  std::uint64_t arg = 0;
  bool finite = true;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Theorem1Ratio t = theorem1_ratio(random_phase(3, 5.0, 103, i), 1e-8, opts);
    finite = finite && std::isfinite(t.ratio) && t.quadrature_ok;
    if (t.ratio > worst) {
      worst = t.ratio;
      arg = i;
    }
  }
  if (!dir.empty()) {
    std::ofstream f(std::filesystem::path(dir) / "theorem1_constant.txt");
    f << "# max over 500 random degree-3 phases (coefficients in [-5, 5], seed 103)\n"
      << "# of |I(P)| / sup_mu |{mu <= P <= mu + 1}|, grid h = 2^-9\n"
      << "max_ratio," << format_number(worst) << "\nphase_index," << arg << '\n';
  }
  return {finite && worst <= 10.0, "max ratio = " + fmt(worst) + " (phase " + std::to_string(arg) + ")"};
}

// AC4: monotonicity counts and refinement stability.
Verdict ac4() {
  SampleOptions coarse;
  coarse.budget = std::uint64_t{1} << 18;
  SampleOptions fine;
  fine.budget = std::uint64_t{1} << 20;
  int worst = 0;
  int stable = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const PhaseCoefficients x = random_phase(3, 5.0, 104, i);
    const LevelProfile a = level_profile(PhaseSamples(x, coarse), 0.1);
    const int n_beta = static_cast<int>(a.beta.size()) - 2;
    const LevelProfile b = level_profile(PhaseSamples(x, fine), 0.1, 2 * n_beta - 1);
    const int ca = monotonicity_changes(a).change_count;
    const int cb = monotonicity_changes(b).change_count;
    worst = std::max({worst, ca, cb});
    stable += ca == cb ? 1 : 0;
  }
  return {worst <= 8 && stable >= 475,
          "max changes = " + std::to_string(worst) + ", stable " + std::to_string(stable) + "/500"};
}

// AC5: rebase and rescale identities.
Verdict ac5() {
  const CounterRng rng(105, 1);
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(trial % 3);
    const PhaseCoefficients x = random_phase(k, 50.0, 105, trial);
    const double scale = 1.0 + x.l1_norm();
    const double theta = rng.uniform(trial, 0, -0.01, 0.01);
    const double w = rng.uniform(trial, 1, 0.25, 0.75);
    const RebasedExpansion g = rebase(x, theta, w);
    const PhaseCoefficients xb = rescale(x, 4);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const std::uint64_t idx = 1000 * (trial + 1) + i;
      const Point2 xi{rng.uniform(idx, 0), rng.uniform(idx, 1)};
      worst = std::max(worst, std::abs(eval_phase(x, xi) - g(xi)) / scale);
      const Point2 small{xi[0] / 4.0, xi[1]};
      worst = std::max(worst, std::abs(eval_phase(x, small) - eval_phase(xb, xi)) / scale);
    }
  }
  return {worst <= 1e-9, "max residual / (1 + |x|_1) = " + fmt(worst, 3)};
}

// AC6: box volume law.
Verdict ac6() {
  bool pass = true;
  std::string detail;
  for (int k : {2, 3}) {
    double lo = 1e300;
    double hi = 0.0;
    for (double lambda : {8.0, 16.0, 32.0}) {
      const double v = omega_box_construct(k, lambda, 0, 0, 0.01).volume /
                       std::pow(lambda, box_volume_exponent(k));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    pass = pass && hi / lo < 2.0;
    detail += "k=" + std::to_string(k) + " spread " + fmt(hi / lo, 6) + " ";
  }
  return {pass, detail};
}

// AC7: disjointness of boxes at k = 2, lambda = 16.
Verdict ac7() {
  const double lambda = 16.0;
  const CounterRng rng(107, 1);
  int violations = 0;
  int outside_own = 0;
  for (std::uint64_t pair = 0; pair < 20; ++pair) {
    const int r1 = static_cast<int>(rng.uniform(pair, 0) * 17.0);
    const int q1 = static_cast<int>(rng.uniform(pair, 1) * 17.0);
    int r2 = r1;
    int q2 = q1;
    if (pair < 10) {
      // neighbouring labels
      (pair % 2 == 0 ? r2 : q2) += (r1 < 16 && q1 < 16) ? 1 : -1;
    } else {
      r2 = (r1 + 1 + static_cast<int>(rng.uniform(pair, 2) * 16.0)) % 17;
      q2 = static_cast<int>(rng.uniform(pair, 3) * 17.0);
    }
    const OmegaBox box = omega_box_construct(2, lambda, r1, q1, 0.01);
    for (std::uint64_t s = 0; s < 10000; ++s) {
      const std::uint64_t idx = 100000 * (pair + 1) + s;
      std::vector<double> u(5);
      for (std::size_t c = 0; c < 5; ++c) u[c] = rng.uniform(idx, c);
      const PhaseCoefficients x = box.point(u);
      outside_own += omega_membership(x, 2, lambda, r1, q1, 0.01) ? 0 : 1;
      violations += omega_membership(x, 2, lambda, r2, q2, 0.01) ? 1 : 0;
    }
  }
  return {violations == 0 && outside_own == 0,
          std::to_string(violations) + " violations over 20 pairs x 10^4 samples"};
}

// AC8: field lower bound.
Verdict ac8() {
  double lo = 1e300;
  double hi = 0.0;
  int failures = 0;
  std::string detail = "min lambda|E|:";
  for (double lambda : {8.0, 16.0, 32.0}) {
    const int L = static_cast<int>(lambda);
    const auto rows = omega_field_check(2, lambda, 0.01,
                                        {{0, 0}, {L / 2, L / 2}, {L, L}, {0, L}, {L, 0}}, 100, 108);
    double m = 1e300;
    for (const auto& r : rows) {
      m = std::min(m, r.min_scaled);
      failures += r.failures;
    }
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    detail += " " + fmt(m);
  }
  return {failures == 0 && lo > 0.0 && hi / lo < 2.0, detail + ", spread " + fmt(hi / lo)};
}

// AC9: ledger flatness at q_k and decay above it.
Verdict ac9() {
  const std::vector<double> lambdas{8.0, 16.0, 32.0};
  auto spread = [](const std::vector<LedgerRow>& rows) {
    double lo = 1e300;
    double hi = 0.0;
    for (const auto& r : rows) {
      lo = std::min(lo, r.contribution);
      hi = std::max(hi, r.contribution);
    }
    return hi / lo;
  };
  const auto k2 = divergence_ledger(2, 6.0, lambdas, 0.01, 100, 109);
  const auto k2p7 = divergence_ledger(2, 7.0, lambdas, 0.01, 100, 109);
  const auto k3 = divergence_ledger(3, 12.0, lambdas, 0.01, 50, 109);
  bool decay = true;
  std::string ratios;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double ratio = k2[i].contribution / k2p7[i].contribution;
    decay = decay && ratio >= lambdas[i] / 4.0 && ratio <= 4.0 * lambdas[i];
    if (i > 0) decay = decay && k2p7[i].contribution < k2p7[i - 1].contribution;
    ratios += (i ? "," : "") + fmt(ratio / lambdas[i], 3);
  }
  int failures = 0;
  for (const auto* rows : {&k2, &k2p7, &k3})
    for (const auto& r : *rows) failures += r.failures;
  const double s2 = spread(k2);
  const double s3 = spread(k3);
  return {failures == 0 && s2 <= 4.0 && s3 <= 4.0 && decay,
          "k=2 p=6 spread " + fmt(s2) + "; p=6/p=7 ratio / lambda = " + ratios +
              "; k=3 p=12 spread " + fmt(s3)};
}

// AC10: one-dimensional parabola.
Verdict ac10(const std::string& dir) {
  const std::vector<double> R{4.0, 8.0, 16.0, 32.0, 64.0};
  const auto m = parabola_shell_masses({4.0, 5.0}, R);
  const auto [lo, hi] = std::minmax_element(m[0].begin(), m[0].end());
  const double flat = *hi / *lo;
  double worst_ratio = 0.0;
  std::string ratios;
  for (std::size_t i = 1; i < m[1].size(); ++i) {
    const double r = m[1][i] / m[1][i - 1];
    worst_ratio = std::max(worst_ratio, r);
    ratios += (i > 1 ? "," : "") + fmt(r);
  }
  if (!dir.empty()) {
    std::ofstream f(std::filesystem::path(dir) / "parabola_shells.csv");
    f << "p,R_inner,R_outer,shell_mass\n";
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t i = 0; i + 1 < R.size(); ++i)
        f << (p == 0 ? 4 : 5) << ',' << format_number(R[i]) << ',' << format_number(R[i + 1])
          << ',' << format_number(m[p][i]) << '\n';
  }
  return {flat - 1.0 <= 0.3 && worst_ratio <= 0.7,
          "p=4 max/min " + fmt(flat) + "; p=5 ratios " + ratios};
}

// AC11: block factorization of the dual determinant.
Verdict ac11() {
  double worst = 0.0;
  int degenerate = 0;
  for (int k : {2, 3})
    for (std::uint64_t i = 0; i < 50; ++i) {
      const DualBound b = dual_bound(random_delta_tuple(k, 111, i));
      if (b.degenerate) {
        ++degenerate;
        continue;
      }
      worst = std::max(worst, std::abs(std::abs(b.det_direct) - std::abs(b.det_blocks)) /
                                  std::abs(b.det_direct));
    }
  return {worst <= 1e-9 && degenerate <= 10,
          "max relative gap " + fmt(worst, 3) + ", degenerate " + std::to_string(degenerate) +
              "/100"};
}

// AC12: byte-identical outputs across reruns and worker counts.
Verdict ac12() {
  using nlohmann::json;
  const std::vector<std::pair<std::string, json>> runs = {
      {"eval", {{"x", {0.5, -1.0, 2.0, 10.5, 3.0}}}},
      {"identity-check", {{"phases", 3}}},
      {"profile", {{"x", {1, 2, 3, 4, 5, 6, 7, 8, 9}}, {"method", "montecarlo"}, {"budget", 20000}}},
      {"monotonicity", {{"phases", 3}}},
      {"geometry", {{"x", {1, 2, 3, 4, 5, 6, 7, 8, 9}}, {"m", 8}}},
      {"omega", {{"lambda_list", {8.0}}, {"samples", 50}, {"box_fractions", {{0.0, 0.5}}}}},
      {"ledger", {{"samples", 12}}},
      {"mass", {{"d", 2}, {"p_list", {6.0}}, {"R_list", {1.0, 2.0}}, {"samples", 1000}}},
      {"ikromov", {{"trials", 4}}},
      {"dual-bound", {{"k", 3}, {"tuples", 5}}},
      {"exponents", json::object()},
  };
  const auto dir = std::filesystem::temp_directory_path() / "tarry_determinism";
  std::filesystem::create_directories(dir);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  const int saved = worker_count();
  int mismatches = 0;
  std::ostringstream sink;
  for (const auto& [name, params] : runs) {
    std::string first;
    int attempt = 0;
    for (int workers : {1, 3, 1}) {
      RunConfig cfg;
      cfg.subcommand = name;
      cfg.params = params;
      cfg.seed = 12;
      cfg.workers = workers;
      cfg.out = (dir / (name + "_" + std::to_string(attempt++) + ".csv")).string();
      run(cfg, sink);
      const std::string body = slurp(cfg.out);
      if (first.empty()) first = body;
      if (body != first || body.empty()) ++mismatches;
    }
  }
  set_worker_count(saved);
  std::filesystem::remove_all(dir);
  return {mismatches == 0, std::to_string(runs.size()) + " subcommands x 3 runs (workers 1, 3, 1), " +
                               std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int run_acceptance(std::ostream& out, const std::string& artifact_dir,
                   const std::vector<int>& only) {
  if (!artifact_dir.empty()) std::filesystem::create_directories(artifact_dir);
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"reconstruction identity", ac1},
      {"closed forms for P = 10.5 xi1", ac2},
      {"empirical stationary-set constant", [&] { return ac3(artifact_dir); }},
      {"monotonicity changes", ac4},
      {"rebase and rescale exactness", ac5},
      {"box volume law", ac6},
      {"box disjointness", ac7},
      {"field lower bound", ac8},
      {"critical-exponent ledger", ac9},
      {"one-dimensional track", [&] { return ac10(artifact_dir); }},
      {"determinant factorization", ac11},
      {"determinism", ac12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += v.pass ? 0 : 1;
    out << "AC" << id << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first << ": "
        << v.detail << " [" << fmt(secs, 3) << " s]" << std::endl;
  }
  return failures;
}

}  // namespace tarry::harness
