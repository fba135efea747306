#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "tarry/io.hpp"
#include "tarry/parallel.hpp"
#include "tarry/quadrature.hpp"
#include "tarry/random.hpp"
#include "tarry/setgeom.hpp"
#include "tarry/stationary.hpp"

namespace tarry::harness {

using nlohmann::json;

namespace {

const std::map<std::string, json>& defaults() {
  static const std::map<std::string, json> d = {
      {"eval", {{"d", 2}, {"k", 2}, {"x", json::array()}, {"tol", 1e-10}}},
      {"identity-check",
       {{"k", 3},
        {"phases", 200},
        {"coeff_range", 5.0},
        {"delta0", 0.1},
        {"budget", 262144},
        {"tol", 1e-8},
        {"threshold", 0.02}}},
      {"profile",
       {{"k", 3},
        {"x", json::array()},
        {"delta0", 0.1},
        {"n_beta", 0},
        {"method", "grid"},
        {"budget", 1048576}}},
      {"monotonicity",
       {{"k", 3},
        {"phases", 500},
        {"coeff_range", 5.0},
        {"delta0", 0.1},
        {"budget", 262144},
        {"tolerance", 1e-3},
        {"max_changes", 8},
        {"stable_fraction", 0.95}}},
      {"geometry",
       {{"k", 3},
        {"x", json::array()},
        {"mu", 0.0},
        {"c", 1.0},
        {"m", 10},
        {"shift", 0.015625},
        {"K", 8},
        {"delta", 0.015625},
        {"pbm", ""}}},
      {"omega",
       {{"k", 2},
        {"lambda_list", {8.0, 16.0, 32.0}},
        {"epsilon_list", {0.01}},
        {"box_fractions", {{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}}},
        {"samples", 100},
        {"tol", 1e-8},
        {"stability_factor", 2.0}}},
      {"ledger",
       {{"k", 2},
        {"p", 6.0},
        {"lambda_list", {8.0, 16.0, 32.0}},
        {"epsilon", 0.01},
        {"samples", 100},
        {"tol", 1e-8},
        {"flat_factor", 4.0},
        {"plot", ""}}},
      {"mass",
       {{"d", 1},
        {"k", 2},
        {"p_list", {4.0}},
        {"R_list", {4.0, 8.0, 16.0, 32.0, 64.0}},
        {"samples", 2000},
        {"tol", 1e-8},
        {"method", "montecarlo"},
        {"plot", ""}}},
      {"ikromov",
       {{"k", 3},
        {"A_list", {8.0, 16.0, 32.0}},
        {"epsilon", 0.01},
        {"trials", 50},
        {"coarse", true}}},
      {"dual-bound",
       {{"k", 2},
        {"K", 1},
        {"interval", 0},
        {"delta", 0.015625},
        {"s0", 0.25},
        {"s1", 0.75},
        {"tuples", 0}}},
      {"exponents", {{"k_max", 12}}},
      {"accept", {{"artifacts", "results"}, {"only", json::array()}}},
  };
  return d;
}

bool same_kind(const json& want, const json& got) {
  if (want.is_number_integer()) return got.is_number_integer();
  if (want.is_number()) return got.is_number();
  if (want.is_array()) return got.is_array();
  return want.type() == got.type();
}

std::vector<double> numbers(const json& j, const char* key) {
  std::vector<double> v;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) throw ConfigError(std::string(key) + " must hold numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

PhaseCoefficients phase_param(const json& p, int d) {
  const MonomialBasis basis(d, p.at("k").get<int>());
  const std::vector<double> x = numbers(p, "x");
  if (x.empty()) return PhaseCoefficients(basis);
  if (static_cast<int>(x.size()) != basis.size())
    throw ConfigError("x must have " + std::to_string(basis.size()) + " entries");
  return PhaseCoefficients(basis, x);
}

struct Outcome {
  Table table;
  std::vector<std::pair<std::string, bool>> assertions;
  bool budget_failure = false;
};

using Command = std::function<Outcome(const json&, std::uint64_t, std::ostream&)>;

Outcome cmd_eval(const json& p, std::uint64_t, std::ostream&) {
  const int d = p.at("d").get<int>();
  const PhaseCoefficients x = phase_param(p, d);
  const double tol = p.at("tol").get<double>();
  QuadResult q;
  if (d == 1) {
    std::vector<double> c{0.0};
    c.insert(c.end(), x.coeffs().begin(), x.coeffs().end());
    q = direct_integral_1d(Poly1(c), 0.0, 1.0, tol);
  } else {
    q = direct_integral_2d(x, tol);
  }
  Outcome o;
  o.table.columns = {"re", "im", "abs", "est_error", "panels", "ok"};
  o.table.add({q.value.real(), q.value.imag(), std::abs(q.value), q.est_error, q.panels, q.ok});
  o.budget_failure = !q.ok;
  return o;
}

SampleOptions sample_options(const json& p, std::uint64_t seed) {
  SampleOptions o;
  if (p.contains("method")) o.method = volume_method_from_string(p.at("method").get<std::string>());
  o.budget = p.at("budget").get<std::uint64_t>();
  o.seed = seed;
  return o;
}

Outcome cmd_identity(const json& p, std::uint64_t seed, std::ostream&) {
  const int k = p.at("k").get<int>();
  const int phases = p.at("phases").get<int>();
  const double range = p.at("coeff_range").get<double>();
  const double delta0 = p.at("delta0").get<double>();
  const double tol = p.at("tol").get<double>();
  const double threshold = p.at("threshold").get<double>();
  const SampleOptions opts = sample_options(p, seed);
  Outcome o;
  o.table.columns = {"index", "direct_re", "direct_im", "recon_re", "recon_im", "deviation",
                     "stderr"};
  double worst = -1e300;
  double max_dev = 0.0;
  for (int i = 0; i < phases; ++i) {
    const PhaseCoefficients x = random_phase(k, range, seed, static_cast<std::uint64_t>(i));
    const QuadResult d = direct_integral_2d(x, tol);
    const Reconstruction r = stationary_reconstruct(PhaseSamples(x, opts), delta0);
    const double dev = std::abs(r.value - d.value);
    o.budget_failure = o.budget_failure || !d.ok;
    worst = std::max(worst, dev - threshold - 3.0 * r.std_error);
    max_dev = std::max(max_dev, dev);
    o.table.add({i, d.value.real(), d.value.imag(), r.value.real(), r.value.imag(), dev,
                 r.std_error});
  }
  o.table.notes.push_back("max_deviation: " + format_number(max_dev));
  o.assertions.emplace_back("deviation <= threshold + 3 stderr", worst <= 0.0);
  return o;
}

Outcome cmd_profile(const json& p, std::uint64_t seed, std::ostream&) {
  const PhaseCoefficients x = phase_param(p, 2);
  const LevelProfile prof = level_profile(x, p.at("delta0").get<double>(),
                                          p.at("n_beta").get<int>(), sample_options(p, seed));
  Outcome o;
  o.table.columns = {"beta", "value", "stderr"};
  for (std::size_t i = 0; i < prof.beta.size(); ++i)
    o.table.add({prof.beta[i], prof.value[i], prof.std_error[i]});
  const MonotonicityReport m = monotonicity_changes(prof);
  o.table.notes.push_back("monotonicity_changes: " + std::to_string(m.change_count));
  return o;
}

Outcome cmd_monotonicity(const json& p, std::uint64_t seed, std::ostream&) {
  const int k = p.at("k").get<int>();
  const int phases = p.at("phases").get<int>();
  const double range = p.at("coeff_range").get<double>();
  const double delta0 = p.at("delta0").get<double>();
  const double tol = p.at("tolerance").get<double>();
  SampleOptions coarse = sample_options(p, seed);
  SampleOptions fine = coarse;
  fine.budget *= 4;
  Outcome o;
  o.table.columns = {"index", "changes", "changes_refined"};
  int worst = 0;
  int stable = 0;
  for (int i = 0; i < phases; ++i) {
    const PhaseCoefficients x = random_phase(k, range, seed, static_cast<std::uint64_t>(i));
    const LevelProfile a = level_profile(PhaseSamples(x, coarse), delta0);
    const int n_beta = static_cast<int>(a.beta.size()) - 2;
    const LevelProfile b = level_profile(PhaseSamples(x, fine), delta0, 2 * n_beta - 1);
    const int ca = monotonicity_changes(a, tol).change_count;
    const int cb = monotonicity_changes(b, tol).change_count;
    worst = std::max({worst, ca, cb});
    stable += ca == cb ? 1 : 0;
    o.table.add({i, ca, cb});
  }
  const double frac = phases > 0 ? static_cast<double>(stable) / phases : 1.0;
  o.table.notes.push_back("max_changes: " + std::to_string(worst));
  o.table.notes.push_back("stable_fraction: " + format_number(frac));
  o.assertions.emplace_back("change count <= max_changes", worst <= p.at("max_changes").get<int>());
  o.assertions.emplace_back("refinement-stable fraction",
                            frac >= p.at("stable_fraction").get<double>());
  return o;
}

Outcome cmd_geometry(const json& p, std::uint64_t, std::ostream&) {
  const PhaseCoefficients x = phase_param(p, 2);
  const double mu = p.at("mu").get<double>();
  const GridSet z = stationary_gridset(x, mu, p.at("c").get<double>(), p.at("m").get<int>());
  const ShiftedCore core = shifted_core(z, p.at("shift").get<double>(), x.k());
  const StripCensus strips = strip_census(z, p.at("K").get<int>());
  const auto proj = projection_intervals(z);
  const WindowCheck w = lagrange_window_check(x, core.core, p.at("delta").get<double>(), mu);
  Outcome o;
  o.table.columns = {"quantity", "value"};
  o.table.add({"measure", z.measure()});
  o.table.add({"core_measure", core.core.measure()});
  o.table.add({"core_shift", core.shift});
  o.table.add({"strips_hit", strips.hit_count});
  o.table.add({"projection_intervals", static_cast<int>(proj.size())});
  o.table.add({"window_squares", w.squares_checked});
  o.table.add({"window_max_deviation", w.max_deviation});
  const std::string pbm = p.at("pbm").get<std::string>();
  if (!pbm.empty()) {
    std::ofstream f(pbm, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + pbm);
    write_pbm(f, z);
  }
  return o;
}

std::vector<std::pair<int, int>> box_labels(const json& fractions, double lambda) {
  std::vector<std::pair<int, int>> out;
  for (const auto& f : fractions) {
    if (!f.is_array() || f.size() != 2) throw ConfigError("box_fractions holds pairs");
    const double a = f[0].get<double>();
    const double b = f[1].get<double>();
    if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
      throw ConfigError("box_fractions must lie in [0, 1]");
    out.emplace_back(static_cast<int>(std::lround(a * std::floor(lambda))),
                     static_cast<int>(std::lround(b * std::floor(lambda))));
  }
  return out;
}

Outcome cmd_omega(const json& p, std::uint64_t seed, std::ostream&) {
  const int k = p.at("k").get<int>();
  const auto lambdas = numbers(p, "lambda_list");
  const auto epsilons = numbers(p, "epsilon_list");
  const int samples = p.at("samples").get<int>();
  const double tol = p.at("tol").get<double>();
  const double factor = p.at("stability_factor").get<double>();
  Outcome o;
  o.table.columns = {"epsilon", "lambda", "r", "r_prime", "volume", "min_scaled",
                     "median_scaled", "failures"};
  double largest = 0.0;
  for (const double eps : epsilons) {
    double lo = 1e300;
    double hi = 0.0;
    for (const double lambda : lambdas) {
      const auto rows = omega_field_check(k, lambda, eps, box_labels(p.at("box_fractions"), lambda),
                                          samples, seed, tol);
      const double volume = omega_box_construct(k, lambda, 0, 0, eps).volume;
      double m = 1e300;
      for (const auto& r : rows) {
        o.table.add({eps, lambda, r.r, r.r_prime, volume, r.min_scaled, r.median_scaled,
                     r.failures});
        m = std::min(m, r.min_scaled);
        o.budget_failure = o.budget_failure || r.failures > 0;
      }
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    const bool stable = lo > 0.0 && hi / lo < factor;
    o.table.notes.push_back("epsilon " + format_number(eps) + ": min ratio across lambda " +
                            format_number(lo > 0.0 ? hi / lo : INFINITY) +
                            (stable ? " (stable)" : " (not stable)"));
    if (stable) largest = std::max(largest, eps);
  }
  o.table.notes.push_back("largest_stable_epsilon: " + format_number(largest));
  return o;
}

Outcome cmd_ledger(const json& p, std::uint64_t seed, std::ostream&) {
  const int k = p.at("k").get<int>();
  const double power = p.at("p").get<double>();
  const auto lambdas = numbers(p, "lambda_list");
  const auto rows = divergence_ledger(k, power, lambdas, p.at("epsilon").get<double>(),
                                      p.at("samples").get<int>(), seed, p.at("tol").get<double>());
  Outcome o;
  o.table.columns = {"lambda", "box_volume", "median_abs_e", "contribution", "failures"};
  std::vector<double> scale;
  std::vector<double> value;
  for (const auto& r : rows) {
    o.table.add({r.lambda, r.box_volume, r.median_abs_e, r.contribution, r.failures});
    o.budget_failure = o.budget_failure || r.failures > 0;
    scale.push_back(r.lambda);
    value.push_back(r.contribution);
  }
  const double qk = critical_exponent(k);
  if (!rows.empty() && power == qk) {
    const auto [lo, hi] = std::minmax_element(value.begin(), value.end());
    const double spread = *hi / *lo;
    o.table.notes.push_back("flatness max/min: " + format_number(spread));
    o.assertions.emplace_back("flat within flat_factor at p = q_k",
                              spread <= p.at("flat_factor").get<double>());
  } else if (!rows.empty() && power == qk + 1.0) {
    // contribution(q_k) / contribution(q_k + 1) = 1 / median |E|
    bool in_range = true;
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double ratio = 1.0 / rows[i].median_abs_e;
      in_range = in_range && ratio >= rows[i].lambda / 4.0 && ratio <= 4.0 * rows[i].lambda;
      if (i > 0) decreasing = decreasing && value[i] < value[i - 1];
      o.table.notes.push_back("lambda " + format_number(rows[i].lambda) +
                              ": contribution(q_k)/contribution(p) = " + format_number(ratio));
    }
    o.assertions.emplace_back("lambda-fold gap to p = q_k", in_range);
    o.assertions.emplace_back("contributions decrease", decreasing);
  }
  const std::string plot = p.at("plot").get<std::string>();
  if (!plot.empty())
    emit_plotdata(plot, p, seed, scale, value, std::vector<double>(scale.size(), 0.0));
  return o;
}

Outcome cmd_mass(const json& p, std::uint64_t seed, std::ostream&) {
  const int d = p.at("d").get<int>();
  const int k = p.at("k").get<int>();
  const auto powers = numbers(p, "p_list");
  const auto radii = numbers(p, "R_list");
  const std::string method = p.at("method").get<std::string>();
  const std::string plot = p.at("plot").get<std::string>();
  Outcome o;
  if (method == "quadrature") {
    if (d != 1 || k != 2) throw ConfigError("quadrature mass curves need d = 1, k = 2");
    const auto shells = parabola_shell_masses(powers, radii);
    o.table.columns = {"p", "R_inner", "R_outer", "shell_mass", "ratio_to_previous"};
    for (std::size_t i = 0; i < powers.size(); ++i)
      for (std::size_t s = 0; s < shells[i].size(); ++s)
        o.table.add({powers[i], radii[s], radii[s + 1], shells[i][s],
                     s == 0 ? 0.0 : shells[i][s] / shells[i][s - 1]});
    if (!plot.empty() && !shells.empty()) {
      std::vector<double> r(radii.begin() + 1, radii.end());
      emit_plotdata(plot, p, seed, r, shells[0], std::vector<double>(r.size(), 0.0));
    }
    return o;
  }
  if (method != "montecarlo") throw ConfigError("method must be montecarlo or quadrature");
  o.table.columns = {"p", "R", "estimate", "stderr", "ball_volume"};
  const int n = basis_dimension(d, k);
  for (std::size_t i = 0; i < powers.size(); ++i) {
    const MassCurve m = mass_curve(d, k, powers[i], radii, p.at("samples").get<int>(), seed,
                                   p.at("tol").get<double>());
    o.budget_failure = o.budget_failure || m.failures > 0;
    for (std::size_t r = 0; r < m.R.size(); ++r)
      o.table.add({powers[i], m.R[r], m.estimate[r], m.std_error[r], ball_volume(n, m.R[r])});
    if (i == 0 && !plot.empty()) emit_plotdata(plot, p, seed, m.R, m.estimate, m.std_error);
  }
  return o;
}

Outcome cmd_ikromov(const json& p, std::uint64_t seed, std::ostream&) {
  const auto A = numbers(p, "A_list");
  const double eps = p.at("epsilon").get<double>();
  const QuadOptions opts = p.at("coarse").get<bool>() ? coarse_panels() : QuadOptions{};
  const auto rows = ikromov_check(p.at("k").get<int>(), A, eps, p.at("trials").get<int>(), seed,
                                  opts);
  Outcome o;
  o.table.columns = {"A", "epsilon", "mean_product", "spread", "failures"};
  for (const double a : A) {
    double sum = 0.0;
    int n = 0;
    int fail = 0;
    for (const auto& r : rows)
      if (r.A == a) {
        sum += r.product;
        ++n;
        fail += r.ok ? 0 : 1;
      }
    o.table.add({a, eps, sum / n, relative_spread(rows, a), fail});
    o.budget_failure = o.budget_failure || fail > 0;
  }
  return o;
}

std::string joined(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_number(v[i]);
  return s;
}

Outcome cmd_dual(const json& p, std::uint64_t seed, std::ostream&) {
  const int k = p.at("k").get<int>();
  const int tuples = p.at("tuples").get<int>();
  std::vector<DeltaTuple> list;
  if (tuples == 0) {
    list.push_back(make_delta_tuple(k, p.at("K").get<int>(), p.at("interval").get<int>(),
                                    p.at("delta").get<double>(), p.at("s0").get<double>(),
                                    p.at("s1").get<double>()));
  } else {
    for (int i = 0; i < tuples; ++i)
      list.push_back(random_delta_tuple(k, seed, static_cast<std::uint64_t>(i)));
  }
  Outcome o;
  o.table.columns = {"index", "k", "K", "delta", "t", "s", "det_direct", "det_blocks",
                     "rel_diff", "bound", "det_bar", "dyadic_exponent", "degenerate"};
  double worst = 0.0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const DualBound b = dual_bound(list[i]);
    const double rel = b.degenerate ? 0.0
                                    : std::abs(std::abs(b.det_direct) - std::abs(b.det_blocks)) /
                                          std::abs(b.det_direct);
    worst = std::max(worst, rel);
    std::string ex;
    for (std::size_t j = 0; j < b.dyadic_exponent.size(); ++j)
      ex += (j ? ";" : "") + std::to_string(b.dyadic_exponent[j]);
    o.table.add({static_cast<int>(i), k, list[i].K, list[i].delta, joined(list[i].t),
                 joined(list[i].s), b.det_direct, b.det_blocks, rel, b.bound, joined(b.det_bar),
                 ex, b.degenerate});
  }
  o.assertions.emplace_back("|det_direct| = |det_blocks| to 1e-9", worst <= 1e-9);
  return o;
}

Outcome cmd_exponents(const json& p, std::uint64_t, std::ostream&) {
  Outcome o;
  o.table.columns = {"k", "N", "q_k", "q_k_parity", "k_mod_4"};
  for (int k = 1; k <= p.at("k_max").get<int>(); ++k) {
    const int q = critical_exponent(k);
    o.table.add({k, basis_dimension(2, k), q, q % 2 == 0 ? "even" : "odd", k % 4});
  }
  return o;
}

Outcome cmd_accept(const json& p, std::uint64_t, std::ostream& out) {
  std::vector<int> only;
  for (const auto& v : p.at("only")) only.push_back(v.get<int>());
  const int failures = run_acceptance(out, p.at("artifacts").get<std::string>(), only);
  Outcome o;
  o.assertions.emplace_back("acceptance criteria", failures == 0);
  return o;
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> c = {
      {"eval", cmd_eval},
      {"identity-check", cmd_identity},
      {"profile", cmd_profile},
      {"monotonicity", cmd_monotonicity},
      {"geometry", cmd_geometry},
      {"omega", cmd_omega},
      {"ledger", cmd_ledger},
      {"mass", cmd_mass},
      {"ikromov", cmd_ikromov},
      {"dual-bound", cmd_dual},
      {"exponents", cmd_exponents},
      {"accept", cmd_accept},
  };
  return c;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : defaults()) n.push_back(k);
    return n;
  }();
  return names;
}

json resolve_params(const std::string& subcommand, const json& overrides, std::uint64_t* seed) {
  const auto it = defaults().find(subcommand);
  if (it == defaults().end()) throw ConfigError("unknown subcommand: " + subcommand);
  json p = it->second;
  if (overrides.is_null()) return p;
  if (!overrides.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, value] : overrides.items()) {
    if (key == "experiment") {
      if (!value.is_string() || value.get<std::string>() != subcommand)
        throw ConfigError("experiment does not match the subcommand");
      continue;
    }
    if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer())
        throw ConfigError("seed must be an integer");
      if (seed) *seed = value.get<std::uint64_t>();
      continue;
    }
    if (!p.contains(key)) throw ConfigError("unknown key for " + subcommand + ": " + key);
    if (!same_kind(p[key], value)) throw ConfigError("wrong type for " + key);
    p[key] = value;
  }
  return p;
}

RunReport run(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto format = output_format_from_string(cfg.format);
  std::uint64_t seed = cfg.seed;
  const json params = resolve_params(cfg.subcommand, cfg.params, &seed);
  set_worker_count(cfg.workers);

  RunReport report;
  report.config = {{"experiment", cfg.subcommand}, {"params", params}};
  Outcome o;
  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + cfg.out);
    sink = &file;
    report.artifacts.push_back(cfg.out);
  }
  try {
    o = commands().at(cfg.subcommand)(params, seed, *sink);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  }
  if (!o.table.columns.empty()) write_table(*sink, report.config, seed, o.table, format);
  if (file.is_open() && !file) throw std::runtime_error("cannot write " + cfg.out);

  report.assertions = o.assertions;
  report.budget_failure = o.budget_failure;
  const bool all = std::all_of(o.assertions.begin(), o.assertions.end(),
                               [](const auto& a) { return a.second; });
  report.exit_code = o.budget_failure ? kBudgetFailure : (all ? kOk : kAssertionFailure);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

PhaseCoefficients random_phase(int k, double range, std::uint64_t seed, std::uint64_t index) {
  const MonomialBasis basis(2, k);
  const CounterRng rng(seed, 0x9a5e);
  std::vector<double> c(static_cast<std::size_t>(basis.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = rng.uniform(index, i, -range, range);
  return PhaseCoefficients(basis, std::move(c));
}

DeltaTuple random_delta_tuple(int k, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed, 0xde17 + static_cast<std::uint64_t>(k));
  const int K = 1 << static_cast<int>(rng.uniform(index, 0) * 4.0);
  const int interval = static_cast<int>(rng.uniform(index, 1) * K);
  const double delta = std::ldexp(1.0, -(4 + static_cast<int>(rng.uniform(index, 2) * 5.0)));
  return make_delta_tuple(k, K, interval, delta, rng.uniform(index, 3), rng.uniform(index, 4));
}

}  // namespace tarry::harness
