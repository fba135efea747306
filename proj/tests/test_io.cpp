#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "harness.hpp"
#include "tarry/io.hpp"

using namespace tarry;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tarry_test_io_" + name);
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(8.0) == "8");
}

TEST_CASE("csv layout") {
  Table t;
  t.columns = {"a", "b", "c"};
  t.add({1, 0.5, "x"});
  t.add({2, true, -1.25});
  t.notes.push_back("done");
  CHECK_THROWS_AS(t.add({1}), std::invalid_argument);
  std::ostringstream s;
  write_table(s, json{{"k", 2}}, 7, t);
  CHECK(s.str() == "# config: {\"k\":2}\n# seed: 7\na,b,c\n1,0.5,x\n2,1,-1.25\n# done\n");

  std::ostringstream j;
  write_table(j, json{{"k", 2}}, 7, t, OutputFormat::json);
  const json back = json::parse(j.str());
  CHECK(back["seed"] == 7);
  CHECK(back["rows"].size() == 2);
  CHECK_THROWS_AS(output_format_from_string("xml"), std::invalid_argument);
}

TEST_CASE("plot data") {
  const auto path = scratch("plot.csv");
  CHECK_THROWS_AS(emit_plotdata(path.string(), json::object(), 1, {}, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(emit_plotdata(path.string(), json::object(), 1, {1.0}, {1.0, 2.0}, {0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(emit_plotdata("/nonexistent-dir/x.csv", json::object(), 1, {1.0}, {1.0}, {0.0}),
                  std::runtime_error);

  emit_plotdata(path.string(), json{{"p", 6}}, 3, {8, 16, 32}, {1, 2, 3}, {0, 0, 0});
  const std::string first = slurp(path);
  int data = 0;
  int header = 0;
  std::istringstream lines(first);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("#", 0) == 0) continue;
    if (line == "scale,value,stderr")
      ++header;
    else
      ++data;
  }
  CHECK(header == 1);
  CHECK(data == 3);
  emit_plotdata(path.string(), json{{"p", 6}}, 3, {8, 16, 32}, {1, 2, 3}, {0, 0, 0});
  CHECK(slurp(path) == first);
  std::filesystem::remove(path);
}

TEST_CASE("parameter resolution") {
  using harness::ConfigError;
  using harness::resolve_params;
  const json d = resolve_params("ledger", json::object());
  CHECK(d["k"] == 2);
  CHECK(d["p"] == 6.0);
  std::uint64_t seed = 0;
  const json p = resolve_params("ledger", json{{"experiment", "ledger"}, {"p", 7}, {"seed", 9}}, &seed);
  CHECK(p["p"] == 7);
  CHECK(seed == 9);
  CHECK_THROWS_AS(resolve_params("ledger", json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(resolve_params("ledger", json{{"k", 2.5}}), ConfigError);
  CHECK_THROWS_AS(resolve_params("ledger", json{{"experiment", "mass"}}), ConfigError);
  CHECK_THROWS_AS(resolve_params("nope", json::object()), ConfigError);
}

TEST_CASE("run reports and exit codes") {
  harness::RunConfig cfg;
  cfg.subcommand = "eval";
  cfg.params = json{{"x", {0, 0, 0, 0, 0}}};
  std::ostringstream out;
  const auto r = harness::run(cfg, out);
  CHECK(r.exit_code == harness::kOk);
  const std::string text = out.str();
  const auto row = text.find("re,im,abs,est_error,panels,ok\n");
  REQUIRE(row != std::string::npos);
  CHECK(std::stod(text.substr(row + 30)) == doctest::Approx(1.0).epsilon(1e-12));

  harness::RunConfig bad = cfg;
  bad.params = json{{"x", {1, 2}}};
  std::ostringstream sink;
  CHECK_THROWS_AS(harness::run(bad, sink), harness::ConfigError);

  // a deliberately impossible flatness factor trips the assertion
  harness::RunConfig ledger;
  ledger.subcommand = "ledger";
  ledger.params = json{{"samples", 5}, {"lambda_list", {8.0, 16.0}}, {"flat_factor", 1.0}};
  CHECK(harness::run(ledger, sink).exit_code == harness::kAssertionFailure);

  harness::RunConfig budget;
  budget.subcommand = "ikromov";
  budget.params = json{{"A_list", {64.0}}, {"trials", 1}, {"coarse", false}, {"k", 3}};
  CHECK(harness::run(budget, sink).exit_code == harness::kBudgetFailure);
}

TEST_CASE("same seed, same bytes, any worker count") {
  harness::RunConfig cfg;
  cfg.subcommand = "mass";
  cfg.params = json{{"d", 1}, {"R_list", {2.0, 4.0}}, {"samples", 1000}};
  cfg.seed = 5;
  std::ostringstream a;
  std::ostringstream b;
  harness::run(cfg, a);
  cfg.workers = 4;
  harness::run(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("# seed: 5") != std::string::npos);
}
