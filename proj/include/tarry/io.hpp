#pragma once

// Tabular output. CSV files start with '#'-prefixed metadata lines holding
// the run configuration and seed, then a header row; numbers are written
// with 17 significant digits so reruns compare byte for byte.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tarry {

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(const std::string& s);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  /// Extra '#' lines written after the rows (CSV) or as "notes" (JSON).
  std::vector<std::string> notes;

  void add(std::vector<nlohmann::json> row);
};

std::string format_number(double v);

void write_table(std::ostream& out, const nlohmann::json& config, std::uint64_t seed,
                 const Table& table, OutputFormat format = OutputFormat::csv);

/// CSV with columns scale, value, stderr. Throws std::invalid_argument on
/// empty or ragged input and std::runtime_error if the file cannot be
/// written.
void emit_plotdata(const std::string& path, const nlohmann::json& config, std::uint64_t seed,
                   const std::vector<double>& scale, const std::vector<double>& value,
                   const std::vector<double>& std_error);

}  // namespace tarry
