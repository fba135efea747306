#pragma once

// Command dispatch shared by the command-line tool and the acceptance
// runner.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tarry/monomial.hpp"
#include "tarry/tarry.hpp"

namespace tarry::harness {

enum ExitCode { kOk = 0, kConfigError = 1, kAssertionFailure = 2, kBudgetFailure = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;  // empty: write to the stream passed to run()
  std::string format = "csv";
};

struct RunReport {
  nlohmann::json config;
  std::vector<std::pair<std::string, bool>> assertions;
  bool budget_failure = false;
  double wall_time = 0.0;
  std::vector<std::string> artifacts;
  int exit_code = kOk;
};

const std::vector<std::string>& subcommands();

/// Defaults merged with `overrides`; unknown keys and mistyped values throw
/// ConfigError. The keys "experiment" and "seed" are accepted everywhere.
nlohmann::json resolve_params(const std::string& subcommand, const nlohmann::json& overrides,
                              std::uint64_t* seed = nullptr);

/// Runs one subcommand. Output goes to cfg.out if set, otherwise to `out`.
RunReport run(const RunConfig& cfg, std::ostream& out);

/// Seeded random phase with every coefficient uniform in [-range, range].
PhaseCoefficients random_phase(int k, double range, std::uint64_t seed, std::uint64_t index);

/// Seeded random dual-box tuple: K in {1, 2, 4, 8}, random dyadic interval,
/// delta in {2^-4, ..., 2^-8}, random s_0 and s_1.
DeltaTuple random_delta_tuple(int k, std::uint64_t seed, std::uint64_t index);

/// Runs the acceptance criteria (all when `only` is empty) and prints one
/// PASS/FAIL line per criterion. Returns the number of failures.
int run_acceptance(std::ostream& out, const std::string& artifact_dir,
                   const std::vector<int>& only = {});

}  // namespace tarry::harness
