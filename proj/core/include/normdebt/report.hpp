#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normdebt/ingest.hpp"
#include "normdebt/schema.hpp"

namespace normdebt {

inline constexpr int kReportFormatVersion = 1;

struct ViolationRow {
  NormalForm target_level = NormalForm::nf1;
  std::string witness;
  std::string explanation;

  bool operator==(const ViolationRow&) const = default;
};

struct TableRow {
  std::string name;
  std::optional<NormalForm> normal_form;  // empty when classification failed
  bool debt = false;                      // below 4NF
  std::vector<ViolationRow> violations;

  std::optional<double> risk_x;
  std::optional<double> risk_a;
  std::optional<std::uint64_t> risk_b;
  bool risk_approximate = false;

  std::optional<double> io_cost;
  std::optional<double> growth_rate;
  std::string growth_basis;  // "override", "geometric over 2.00 months (rows)", ...

  std::optional<double> expected_return;  // 1 / io_cost
  std::optional<double> weight;
  std::optional<std::size_t> priority_rank;
  std::string rationale;
  std::optional<std::string> exclusion;  // why a debt table is not ranked

  bool operator==(const TableRow&) const = default;
};

struct EffortSummary {
  std::size_t debt_table_count = 0;
  std::size_t conventional_effort = 0;     // every debt table
  std::size_t risk_based_effort = 0;       // highest inconsistency risk
  std::size_t portfolio_based_effort = 0;  // weights near the minimum

  bool operator==(const EffortSummary&) const = default;
};

struct Provenance {
  std::string generated_at;
  std::string schema;
  std::string data_dir;
  std::string workload;
  std::string sizes;
  std::string risk_policy;
  double growth_threshold = 0;
  std::size_t risk_top = 0;
  double weight_margin = 0;
  std::size_t key_search_limit = 0;

  bool operator==(const Provenance&) const = default;
};

struct PortfolioSummary {
  double expected_return = 0;  // E_p
  double risk = 0;             // R_p

  bool operator==(const PortfolioSummary&) const = default;
};

struct ReportFailure {
  std::string table;
  std::string kind;  // "input", "capacity", "estimation"
  std::string message;

  bool operator==(const ReportFailure&) const = default;
};

struct PriorityReport {
  int format_version = kReportFormatVersion;
  std::vector<TableRow> tables;  // schema order
  std::optional<PortfolioSummary> portfolio;
  EffortSummary summary;
  Provenance provenance;
  std::vector<ReportFailure> failures;
  Warnings warnings;

  bool has_risk() const;
  bool has_io_cost() const;
  bool operator==(const PriorityReport&) const = default;
};

// Runs the pipeline: classify every table, keep the debt tables, resolve growth rates
// (overrides first, then size history), drop tables below the growth threshold, compute
// monthly I/O costs, weight the remaining tables with the tangency portfolio, rank them, and
// compute the inconsistency risk for tables with a data extract.
//
// Stages whose inputs are absent are skipped: no workload means no I/O cost or portfolio, no
// data directory means no risk metric. Loader problems raise IngestError; a capacity problem
// in the risk metric raises CapacityError. Tables that fail to classify are listed in
// `failures` and the rest of the analysis proceeds.
PriorityReport run_analysis(const ProjectConfig& config);

enum class ReportSection : unsigned {
  classification = 1u << 0,
  risk = 1u << 1,
  io_cost = 1u << 2,
  portfolio = 1u << 3,
  effort = 1u << 4,
  all = 0x1fu,
};

constexpr ReportSection operator|(ReportSection a, ReportSection b) {
  return static_cast<ReportSection>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}

constexpr bool has_section(ReportSection set, ReportSection section) {
  return (static_cast<unsigned>(set) & static_cast<unsigned>(section)) != 0;
}

struct RenderOptions {
  OutputFormat format = OutputFormat::text;
  ReportSection sections = ReportSection::all;
  std::optional<std::size_t> top;  // limit ranked listings
};

std::string render_report(const PriorityReport& report, const RenderOptions& options = {});

// Parses the json rendering of a full report. Throws InputError on malformed documents or an
// unsupported format_version.
PriorityReport report_from_json(std::string_view text);

}  // namespace normdebt
