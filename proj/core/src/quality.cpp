#include "normdebt/quality.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

namespace normdebt {

namespace {

using Mask = std::uint64_t;

template <typename T>
std::optional<T> parse_unsigned(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(separator);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

// n choose k, saturating at the subset budget + 1 so callers can compare against the budget.
std::uint64_t bounded_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (result > static_cast<long double>(kSubsetBudget) + 1) return kSubsetBudget + 1;
  }
  return static_cast<std::uint64_t>(result + 0.5L);
}

// Number of subsets with 1..k_max members drawn from n columns, saturating past the budget.
std::uint64_t bounded_subset_count(std::size_t n, std::size_t k_max) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= std::min(k_max, n); ++k) {
    total += bounded_choose(n, k);
    if (total > kSubsetBudget) return kSubsetBudget + 1;
  }
  return total;
}

// Columns dictionary-encoded so projections compare as integer tuples.
class EncodedRelation {
 public:
  explicit EncodedRelation(const RelationData& data) : _rows(data.rows.size()), _codes(data.columns.size()) {
    for (std::size_t column = 0; column < data.columns.size(); ++column) {
      std::unordered_map<std::string, std::uint32_t> dictionary;
      auto& codes = _codes[column];
      codes.reserve(_rows);
      for (const auto& row : data.rows) {
        const auto& value = row[column];
        if (!value) {
          codes.push_back(0);  // NULL
          continue;
        }
        const auto [it, inserted] =
            dictionary.try_emplace(*value, static_cast<std::uint32_t>(dictionary.size() + 1));
        codes.push_back(it->second);
      }
    }
  }

  std::size_t rows() const { return _rows; }
  std::size_t columns() const { return _codes.size(); }

  // Refines a row partition by one more column. Returns the number of groups.
  std::size_t refine(const std::vector<std::uint32_t>& groups, std::size_t column,
                     std::vector<std::uint32_t>& out) const {
    _scratch.clear();
    out.resize(_rows);
    const auto& codes = _codes[column];
    for (std::size_t row = 0; row < _rows; ++row) {
      const auto key = (static_cast<std::uint64_t>(groups[row]) << 32) | codes[row];
      const auto [it, inserted] = _scratch.try_emplace(key, static_cast<std::uint32_t>(_scratch.size()));
      out[row] = it->second;
    }
    return _scratch.size();
  }

  std::size_t distinct(Mask subset) const {
    std::vector<std::uint32_t> groups(_rows, 0);
    std::vector<std::uint32_t> next;
    std::size_t count = _rows == 0 ? 0 : 1;
    for (auto rest = subset; rest != 0 && count < _rows; rest &= rest - 1) {
      count = refine(groups, static_cast<std::size_t>(std::countr_zero(rest)), next);
      groups.swap(next);
    }
    return count;
  }

 private:
  std::size_t _rows;
  std::vector<std::vector<std::uint32_t>> _codes;
  mutable std::unordered_map<std::uint64_t, std::uint32_t> _scratch;
};

struct Tally {
  std::uint64_t duplicates = 0;
  std::uint64_t visited = 0;
};

// Depth-first walk over subsets in which every member index exceeds the parent's last index.
// Each subset is visited once; its partition is the parent's refined by the new column.
class SubsetWalker {
 public:
  SubsetWalker(const EncodedRelation& relation, std::size_t max_size) : _relation(relation), _max_size(max_size) {
    _levels.resize(std::min(max_size, relation.columns()) + 1);
    _levels[0].assign(relation.rows(), 0);
  }

  Tally run() {
    descend(0, 0);
    return _tally;
  }

 private:
  // Subsets of size <= remaining drawn from `available` columns, including the empty one.
  std::uint64_t subtree_size(std::size_t available, std::size_t remaining) const {
    return 1 + bounded_subset_count(available, remaining);
  }

  void descend(std::size_t depth, std::size_t first_column) {
    const auto rows = _relation.rows();
    for (std::size_t column = first_column; column < _relation.columns(); ++column) {
      const auto groups = _relation.refine(_levels[depth], column, _levels[depth + 1]);
      const auto size = depth + 1;
      const auto later = _relation.columns() - column - 1;
      if (groups == rows) {
        // Every superset of an all-distinct projection is all-distinct as well.
        _tally.visited += subtree_size(later, _max_size - size);
        continue;
      }
      _tally.duplicates += rows - groups;
      ++_tally.visited;
      if (size < _max_size) descend(depth + 1, column + 1);
    }
  }

  const EncodedRelation& _relation;
  std::size_t _max_size;
  std::vector<std::vector<std::uint32_t>> _levels;
  Tally _tally;
};

Tally sample_subsets(const EncodedRelation& relation, std::size_t samples, std::uint64_t seed) {
  const auto n = relation.columns();
  const Mask upper = n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::mt19937_64 generator(seed);
  std::uniform_int_distribution<Mask> pick(1, upper);
  std::vector<Mask> chosen;
  chosen.reserve(samples);
  std::set<Mask> seen;
  while (chosen.size() < samples) {
    const auto subset = pick(generator);
    if (seen.insert(subset).second) chosen.push_back(subset);
  }
  Tally tally;
  for (const auto subset : chosen) {
    tally.duplicates += relation.rows() - relation.distinct(subset);
    ++tally.visited;
  }
  return tally;
}

}  // namespace

void RelationData::validate() const {
  std::set<std::string_view> seen;
  for (const auto& column : columns) {
    if (column.empty()) throw InputError(fmt::format("relation '{}' has an unnamed column", table_name));
    if (!seen.insert(column).second) {
      throw InputError(fmt::format("relation '{}' has duplicate column '{}'", table_name, column));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != columns.size()) {
      throw InputError(fmt::format("relation '{}': row {} has {} values, expected {}", table_name, i + 1,
                                   rows[i].size(), columns.size()));
    }
  }
}

std::optional<std::size_t> RelationData::column_index(std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

std::uint64_t duplicate_count(const RelationData& data, const std::set<std::string>& subset) {
  if (subset.empty()) throw InputError("duplicate_count needs a non-empty column subset");
  std::vector<std::size_t> indices;
  for (const auto& name : subset) {
    const auto index = data.column_index(name);
    if (!index) throw InputError(fmt::format("relation '{}' has no column '{}'", data.table_name, name));
    indices.push_back(*index);
  }
  std::set<std::vector<Value>> distinct;
  for (const auto& row : data.rows) {
    std::vector<Value> projection;
    projection.reserve(indices.size());
    for (const auto index : indices) projection.push_back(row.at(index));
    distinct.insert(std::move(projection));
  }
  return data.rows.size() - distinct.size();
}

EnumerationPolicy EnumerationPolicy::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts[0] == "exact" && parts.size() == 1) return exact();
  if (parts[0] == "capped" && parts.size() == 2) {
    const auto k = parse_unsigned<std::size_t>(parts[1]);
    if (!k || *k == 0) throw InputError(fmt::format("risk policy '{}': k must be a positive integer", text));
    return capped(*k);
  }
  if (parts[0] == "sampled" && (parts.size() == 2 || parts.size() == 3)) {
    const auto m = parse_unsigned<std::size_t>(parts[1]);
    if (!m || *m == 0) throw InputError(fmt::format("risk policy '{}': sample count must be positive", text));
    std::uint64_t seed = 0;
    if (parts.size() == 3) {
      const auto parsed = parse_unsigned<std::uint64_t>(parts[2]);
      if (!parsed) throw InputError(fmt::format("risk policy '{}': seed must be an unsigned integer", text));
      seed = *parsed;
    }
    return sampled(*m, seed);
  }
  throw InputError(fmt::format("unknown risk policy '{}' (expected exact, capped:<k> or sampled:<m>[:<seed>])", text));
}

std::string EnumerationPolicy::to_string() const {
  switch (kind) {
    case Kind::exact:
      return "exact";
    case Kind::capped_k:
      return fmt::format("capped:{}", k_max);
    case Kind::sampled:
      return fmt::format("sampled:{}:{}", samples, seed);
  }
  return "?";
}

RiskScore inconsistency_risk(const RelationData& data, const EnumerationPolicy& policy) {
  data.validate();
  RiskScore score;
  score.table_name = data.table_name;
  score.policy = policy;

  const auto n = data.columns.size();
  if (n > kMaxColumns) {
    throw CapacityError(fmt::format("relation '{}' has {} columns; at most {} are supported", data.table_name, n,
                                    kMaxColumns));
  }
  score.b_total = static_cast<std::uint64_t>(data.rows.size()) * n;
  score.subsets_total = n == 0 ? 0 : (std::uint64_t{1} << n) - 1;
  if (data.rows.empty() || n == 0) {
    score.warnings.push_back(fmt::format("relation '{}' is empty; risk of inconsistency defined as 0", data.table_name));
    return score;
  }

  const EncodedRelation relation(data);
  Tally tally;
  switch (policy.kind) {
    case EnumerationPolicy::Kind::exact:
      if (n > kExactColumnLimit) {
        throw CapacityError(fmt::format(
            "relation '{}' has {} columns; exact enumeration is limited to {}. Choose capped:<k> or sampled:<m>",
            data.table_name, n, kExactColumnLimit));
      }
      tally = SubsetWalker(relation, n).run();
      break;
    case EnumerationPolicy::Kind::capped_k: {
      if (policy.k_max == 0) throw InputError("capped enumeration needs k_max >= 1");
      if (bounded_subset_count(n, policy.k_max) > kSubsetBudget) {
        throw CapacityError(fmt::format("relation '{}': capped:{} visits more than {} subsets", data.table_name,
                                        policy.k_max, kSubsetBudget));
      }
      tally = SubsetWalker(relation, policy.k_max).run();
      break;
    }
    case EnumerationPolicy::Kind::sampled: {
      if (policy.samples == 0) throw InputError("sampled enumeration needs at least one sample");
      if (policy.samples > kSubsetBudget) {
        throw CapacityError(fmt::format("sampled:{} exceeds the budget of {} subsets", policy.samples, kSubsetBudget));
      }
      if (policy.samples >= score.subsets_total) {
        tally = SubsetWalker(relation, n).run();
      } else {
        tally = sample_subsets(relation, policy.samples, policy.seed);
      }
      break;
    }
  }

  score.subsets_visited = tally.visited;
  score.a_total = static_cast<double>(tally.duplicates);
  if (policy.kind == EnumerationPolicy::Kind::sampled && tally.visited < score.subsets_total) {
    score.a_total *= static_cast<double>(score.subsets_total) / static_cast<double>(tally.visited);
  }
  if (policy.kind != EnumerationPolicy::Kind::exact) {
    score.warnings.push_back(fmt::format("relation '{}': risk computed with non-exact policy {} ({} of {} subsets)",
                                         data.table_name, policy.to_string(), tally.visited, score.subsets_total));
  }
  score.x = score.a_total / static_cast<double>(score.b_total);
  return score;
}

std::vector<RiskScore> rank_by_risk(std::vector<RiskScore> scores) {
  std::stable_sort(scores.begin(), scores.end(), [](const RiskScore& a, const RiskScore& b) {
    if (a.x != b.x) return a.x > b.x;
    return a.table_name < b.table_name;
  });
  return scores;
}

}  // namespace normdebt
