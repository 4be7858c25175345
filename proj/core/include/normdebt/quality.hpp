#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "normdebt/error.hpp"

namespace normdebt {

// std::nullopt is the NULL token. NULL compares equal to NULL; everything else is compared as
// exact strings.
using Value = std::optional<std::string>;
using Row = std::vector<Value>;

struct RelationData {
  std::string table_name;
  std::vector<std::string> columns;
  std::vector<Row> rows;

  // Throws InputError on duplicate column names or rows of the wrong width.
  void validate() const;
  std::optional<std::size_t> column_index(std::string_view column) const;
};

// Redundant occurrences in the projection onto `subset`: rows minus distinct projected tuples.
std::uint64_t duplicate_count(const RelationData& data, const std::set<std::string>& subset);

struct EnumerationPolicy {
  enum class Kind { exact, capped_k, sampled };

  Kind kind = Kind::exact;
  std::size_t k_max = 0;    // capped_k: largest subset size visited
  std::size_t samples = 0;  // sampled: number of distinct subsets drawn
  std::uint64_t seed = 0;   // sampled: generator seed

  static EnumerationPolicy exact() { return {}; }
  static EnumerationPolicy capped(std::size_t k_max) { return {Kind::capped_k, k_max, 0, 0}; }
  static EnumerationPolicy sampled(std::size_t samples, std::uint64_t seed) {
    return {Kind::sampled, 0, samples, seed};
  }

  // "exact", "capped:<k>", "sampled:<m>:<seed>"
  static EnumerationPolicy parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const EnumerationPolicy&) const = default;
};

// Exact enumeration is allowed up to this many columns.
inline constexpr std::size_t kExactColumnLimit = 20;
// Upper bound on subsets visited by any policy: 2^kExactColumnLimit - 1.
inline constexpr std::uint64_t kSubsetBudget = (std::uint64_t{1} << kExactColumnLimit) - 1;
// Column subsets are tracked as 64-bit masks.
inline constexpr std::size_t kMaxColumns = 63;

struct RiskScore {
  std::string table_name;
  // Sum of duplicate counts. Integral for exact and capped enumeration; for sampling it is
  // the sampled sum scaled by subsets_total / subsets_visited.
  double a_total = 0;
  std::uint64_t b_total = 0;  // rows x columns
  double x = 0;               // a_total / b_total, 0 for an empty relation
  EnumerationPolicy policy;
  std::uint64_t subsets_visited = 0;
  std::uint64_t subsets_total = 0;  // 2^n - 1
  std::vector<std::string> warnings;

  bool approximate() const { return policy.kind != EnumerationPolicy::Kind::exact; }
};

RiskScore inconsistency_risk(const RelationData& data, const EnumerationPolicy& policy = EnumerationPolicy::exact());

// Descending by x, ties by table name.
std::vector<RiskScore> rank_by_risk(std::vector<RiskScore> scores);

}  // namespace normdebt
