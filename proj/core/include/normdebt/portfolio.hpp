#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "normdebt/error.hpp"

namespace normdebt {

// A debt table seen as an investment asset.
struct PortfolioAsset {
  std::string table_name;
  double expected_return = 0;  // 1 / monthly I/O cost, or any positive multiple of it
  double risk = 0;             // monthly growth rate

  bool operator==(const PortfolioAsset&) const = default;
};

using WeightMap = std::map<std::string, double>;

struct PortfolioResult {
  WeightMap weights;
  double expected_return = 0;  // E_p
  double risk = 0;             // R_p
  // Ascending weight, ties by lower expected return (higher I/O cost) and then name.
  std::vector<std::string> priority_order;
};

// Maximum return-per-risk portfolio with uncorrelated assets and no risk-free asset:
// w_i = (E_i / R_i^2) / sum_j (E_j / R_j^2). Throws InputError on an empty list, duplicate
// names, or a non-positive return or risk.
PortfolioResult tangency_weights(std::span<const PortfolioAsset> assets);

// E_p = sum w_i E_i
double portfolio_return(const WeightMap& weights, std::span<const PortfolioAsset> assets);

// R_p = sqrt(sum w_i^2 R_i^2)
double portfolio_risk(const WeightMap& weights, std::span<const PortfolioAsset> assets);

struct PriorityEntry {
  std::size_t rank = 0;  // 1 = normalize first
  std::string table_name;
  double weight = 0;
  std::string rationale;
};

// Lowest weight first. Each rationale states where the table stands on I/O cost and on growth.
std::vector<PriorityEntry> prioritize(const PortfolioResult& result, std::span<const PortfolioAsset> assets);

}  // namespace normdebt
