#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normdebt/error.hpp"
#include "normdebt/quality.hpp"
#include "normdebt/schema.hpp"
#include "normdebt/workload.hpp"

namespace normdebt {

// Schema document:
//   {"tables": [{"name": "T",
//                "attributes": [{"name": "A", "atomic": true}, ...],
//                "fds":  [{"lhs": ["A"], "rhs": ["B"]}, ...],
//                "mvds": [{"lhs": ["A"], "rhs": ["C"]}, ...]}]}
// "atomic" defaults to true; "fds" and "mvds" may be omitted.
// All problems are collected and raised together as an IngestError.
std::vector<TableDef> parse_schema(std::string_view text, const std::string& source, Warnings* warnings = nullptr);
std::vector<TableDef> load_schema(const std::filesystem::path& path, Warnings* warnings = nullptr);

// Inverse of parse_schema.
std::string dump_schema(std::span<const TableDef> tables);

// Comma-separated extract with a header record. Quoted fields may contain commas, line
// breaks and doubled quotes. An unquoted empty field is NULL; "" is the empty string.
// When `declared` is given the header must name exactly its attributes.
RelationData parse_table_data(std::string_view text, const std::string& source, std::string_view table,
                              const TableDef* declared = nullptr);
RelationData load_table_data(const std::filesystem::path& path, std::string_view table,
                             const TableDef* declared = nullptr);

// One JSON object per line with fields table, kind, io_cost, rate_per_month and optional
// multi_table. Blank lines are skipped.
Workload parse_workload(std::string_view text, const std::string& source);
Workload load_workload(const std::filesystem::path& path);

// CSV with header table,date,size,unit. Histories come out in order of first appearance.
std::vector<SizeHistory> parse_size_history(std::string_view text, const std::string& source);
std::vector<SizeHistory> load_size_history(const std::filesystem::path& path);

enum class OutputFormat { text, json };

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);

// How many tables each debt-aware strategy selects for normalization.
struct EffortSettings {
  std::size_t risk_top = 1;     // tables with the highest inconsistency risk
  double weight_margin = 0.01;  // portfolio weights within this distance of the minimum
};

struct ProjectConfig {
  std::filesystem::path schema_path;
  std::filesystem::path data_dir;  // optional; empty skips the inconsistency metric
  std::filesystem::path workload_path;  // optional for the classify and risk views
  std::optional<std::filesystem::path> sizes_path;
  std::map<std::string, double> growth_overrides;  // beat estimated rates
  EnumerationPolicy risk_policy;
  double growth_threshold = 0;
  OutputFormat output_format = OutputFormat::text;
  EffortSettings effort;
  std::size_t key_search_limit = kKeySearchLimit;
  std::optional<std::string> pinned_timestamp;

  // Throws InputError.
  void validate() const;
};

// JSON project file with keys schema, data_dir, workload, sizes, growth_overrides,
// risk_policy, growth_threshold, output_format, risk_top, weight_margin, key_search_limit.
// Relative paths are resolved against the file's directory.
ProjectConfig load_project_config(const std::filesystem::path& path);

// Reads a whole file; throws IngestError with code E_IO when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace normdebt
