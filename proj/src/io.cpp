#include "tarry/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace tarry {

namespace {

std::string cell(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

}  // namespace

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format: " + s);
}

void Table::add(std::vector<nlohmann::json> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table(std::ostream& out, const nlohmann::json& config, std::uint64_t seed,
                 const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    nlohmann::json j;
    j["config"] = config;
    j["seed"] = seed;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    j["notes"] = table.notes;
    out << j.dump(2) << '\n';
    return;
  }
  out << "# config: " << config.dump() << '\n';
  out << "# seed: " << seed << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
    out << '\n';
  }
  for (const auto& n : table.notes) out << "# " << n << '\n';
}

void emit_plotdata(const std::string& path, const nlohmann::json& config, std::uint64_t seed,
                   const std::vector<double>& scale, const std::vector<double>& value,
                   const std::vector<double>& std_error) {
  if (scale.empty()) throw std::invalid_argument("emit_plotdata: no data");
  if (value.size() != scale.size() || std_error.size() != scale.size())
    throw std::invalid_argument("emit_plotdata: columns differ in length");
  Table t;
  t.columns = {"scale", "value", "stderr"};
  for (std::size_t i = 0; i < scale.size(); ++i) t.add({scale[i], value[i], std_error[i]});
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_table(f, config, seed, t);
  if (!f) throw std::runtime_error("cannot write " + path);
}

}  // namespace tarry
