#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "harness.hpp"
#include "tarry/io.hpp"

namespace {

nlohmann::json load_overrides(const std::string& path, const std::vector<std::string>& sets) {
  using nlohmann::json;
  json j = json::object();
  if (!path.empty()) {
    std::ifstream f(path);
    if (!f) throw tarry::harness::ConfigError("cannot read " + path);
    try {
      j = json::parse(f);
    } catch (const json::parse_error& e) {
      throw tarry::harness::ConfigError(std::string("bad config: ") + e.what());
    }
    if (!j.is_object()) throw tarry::harness::ConfigError("config must be a JSON object");
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw tarry::harness::ConfigError("--set expects key=value: " + s);
    const std::string value = s.substr(eq + 1);
    json v = json::parse(value, nullptr, false);
    j[s.substr(0, eq)] = v.is_discarded() ? json(value) : v;
  }
  return j;
}

const std::map<std::string, std::string> kHelp = {
    {"eval", "evaluate the extension operator at one point"},
    {"identity-check", "compare |I(P)| with the direct sublevel integral"},
    {"profile", "sublevel-set measure profile of one phase"},
    {"monotonicity", "count monotone breaks in random sublevel profiles"},
    {"geometry", "stationary-set geometry for one point"},
    {"omega", "sample |E| over the Omega boxes for several lambda and epsilon"},
    {"ledger", "divergence ledger of lower-bound box contributions"},
    {"mass", "cumulative L^p mass of the extension over growing balls"},
    {"ikromov", "sublevel bound check for random phases"},
    {"dual-bound", "determinant lower bound for delta-tuples"},
    {"exponents", "critical exponents and their parity"},
    {"accept", "run the acceptance criteria"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary-set and Tarry-problem experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
  std::string format = "csv";
  for (const auto& name : tarry::harness::subcommands()) {
    CLI::App* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("--config", config_path, "JSON parameter file");
    sub->add_option("--set", sets, "parameter override key=value (value parsed as JSON)");
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--out", out, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tarry::harness::kConfigError;
  }

  tarry::harness::RunConfig cfg;
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.seed = seed;
  cfg.workers = workers;
  cfg.out = out;
  cfg.format = format;
  try {
    cfg.params = load_overrides(config_path, sets);
    // an explicit --seed wins over the config file
    if (app.get_subcommands().front()->count("--seed") > 0) cfg.params.erase("seed");
    const auto report = tarry::harness::run(cfg, std::cout);
    for (const auto& [name, ok] : report.assertions)
      std::cerr << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (report.budget_failure) std::cerr << "quadrature budget exceeded\n";
    std::cerr << "wall time: " << std::fixed << std::setprecision(3) << report.wall_time << " s\n";
    return report.exit_code;
  } catch (const tarry::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return tarry::harness::kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return tarry::harness::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return tarry::harness::kConfigError;
  }
}
