#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "normdebt/error.hpp"

namespace normdebt {

enum class OperationKind { update, insert, remove, select };

// "update", "insert", "delete", "select"
std::string_view to_string(OperationKind kind);
std::optional<OperationKind> parse_operation_kind(std::string_view text);

struct OperationStat {
  std::string table_name;
  OperationKind kind = OperationKind::select;
  double io_cost_per_exec = 0;  // pages read or written per execution
  double rate_per_month = 0;    // executions per month
  bool multi_table = false;     // joins are left out of a table's cost

  bool operator==(const OperationStat&) const = default;
};

class Workload {
 public:
  Workload() = default;
  explicit Workload(std::vector<OperationStat> stats);

  void add(OperationStat stat);

  const std::vector<OperationStat>& stats() const { return _stats; }
  // Table names in order of first appearance.
  std::vector<std::string> tables() const;
  // Statistics of one table, in input order.
  std::vector<OperationStat> stats_for(std::string_view table) const;
  bool contains(std::string_view table) const;

 private:
  std::vector<OperationStat> _stats;
};

// Monthly I/O cost: sum of cost x rate over the table's single-table operations.
// A table absent from the workload costs 0.
double table_io_cost(const Workload& workload, std::string_view table);

// Same sum restricted to one operation kind.
double table_io_cost(const Workload& workload, std::string_view table, OperationKind kind);

using Timestamp = std::chrono::sys_seconds;

// Accepts YYYY-MM-DD and YYYY-MM-DDTHH:MM:SS with an optional trailing Z (UTC).
std::optional<Timestamp> parse_timestamp(std::string_view text);
// YYYY-MM-DD at midnight, YYYY-MM-DDTHH:MM:SSZ otherwise.
std::string format_timestamp(Timestamp at);

enum class SizeUnit { rows, pages };

std::string_view to_string(SizeUnit unit);
std::optional<SizeUnit> parse_size_unit(std::string_view text);

struct SizeSample {
  Timestamp at;
  std::uint64_t size = 0;

  bool operator==(const SizeSample&) const = default;
};

struct SizeHistory {
  std::string table_name;
  SizeUnit unit = SizeUnit::rows;
  std::vector<SizeSample> samples;  // strictly increasing timestamps

  void validate() const;
  bool operator==(const SizeHistory&) const = default;
};

inline constexpr double kDaysPerMonth = 30.44;

struct GrowthEstimate {
  enum class Method { geometric, arithmetic };

  double rate = 0;      // per month, clamped at 0
  double raw_rate = 0;  // before clamping
  bool shrinking = false;
  Method method = Method::geometric;
  double months = 0;  // elapsed time between first and last sample
};

std::string_view to_string(GrowthEstimate::Method method);

// Endpoint geometric mean: (last / first)^(1 / months) - 1. When a size is zero the
// arithmetic rule (last - first) / (base * months) is used, base being the first positive
// size (or 1). Throws EstimationError with fewer than two samples.
GrowthEstimate estimate_growth_rate(const SizeHistory& history);

struct TableCost {
  std::string table_name;
  double io_cost = 0;      // pages per month
  double growth_rate = 0;  // fraction per month

  bool operator==(const TableCost&) const = default;
};

// Tables whose growth rate is at least `threshold`, in input order.
std::vector<TableCost> filter_high_growth(std::span<const TableCost> costs, double threshold);

}  // namespace normdebt
