#include "normdebt/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace normdebt {

namespace {

void check_assets(std::span<const PortfolioAsset> assets) {
  if (assets.empty()) throw InputError("portfolio needs at least one asset");
  std::set<std::string> seen;
  for (const auto& asset : assets) {
    if (!seen.insert(asset.table_name).second) {
      throw InputError(fmt::format("portfolio asset '{}' appears twice", asset.table_name));
    }
    if (!(asset.expected_return > 0) || !std::isfinite(asset.expected_return)) {
      throw InputError(fmt::format("portfolio asset '{}' needs a positive finite expected return, got {}",
                                   asset.table_name, asset.expected_return));
    }
    if (!(asset.risk > 0) || !std::isfinite(asset.risk)) {
      throw InputError(
          fmt::format("portfolio asset '{}' needs a positive finite risk, got {}", asset.table_name, asset.risk));
    }
  }
}

void check_keys(const WeightMap& weights, std::span<const PortfolioAsset> assets) {
  if (weights.size() != assets.size()) {
    throw InputError(fmt::format("weights cover {} tables but {} assets were given", weights.size(), assets.size()));
  }
  for (const auto& asset : assets) {
    if (!weights.contains(asset.table_name)) {
      throw InputError(fmt::format("no weight for portfolio asset '{}'", asset.table_name));
    }
  }
}

std::string ordinal(std::size_t n) {
  const auto tens = n % 100;
  const char* suffix = "th";
  if (tens < 11 || tens > 13) {
    switch (n % 10) {
      case 1:
        suffix = "st";
        break;
      case 2:
        suffix = "nd";
        break;
      case 3:
        suffix = "rd";
        break;
      default:
        break;
    }
  }
  return fmt::format("{}{}", n, suffix);
}

// Competition rank (1 = largest value) of `value` among `values`.
std::size_t standing(double value, const std::vector<double>& values) {
  return 1 + static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return v > value; }));
}

std::string standing_text(std::size_t place, std::size_t count) {
  if (count == 1) return "only table";
  if (place == 1) return fmt::format("highest of {}", count);
  if (place == count) return fmt::format("lowest of {}", count);
  return fmt::format("{} highest of {}", ordinal(place), count);
}

}  // namespace

PortfolioResult tangency_weights(std::span<const PortfolioAsset> assets) {
  check_assets(assets);
  std::vector<double> scores;
  scores.reserve(assets.size());
  for (const auto& asset : assets) scores.push_back(asset.expected_return / (asset.risk * asset.risk));
  double total = 0;
  for (const auto score : scores) total += score;

  PortfolioResult result;
  for (std::size_t i = 0; i < assets.size(); ++i) result.weights[assets[i].table_name] = scores[i] / total;
  result.expected_return = portfolio_return(result.weights, assets);
  result.risk = portfolio_risk(result.weights, assets);

  std::vector<const PortfolioAsset*> order;
  for (const auto& asset : assets) order.push_back(&asset);
  std::sort(order.begin(), order.end(), [&](const PortfolioAsset* a, const PortfolioAsset* b) {
    const auto wa = result.weights.at(a->table_name);
    const auto wb = result.weights.at(b->table_name);
    if (wa != wb) return wa < wb;
    if (a->expected_return != b->expected_return) return a->expected_return < b->expected_return;
    return a->table_name < b->table_name;
  });
  for (const auto* asset : order) result.priority_order.push_back(asset->table_name);
  return result;
}

double portfolio_return(const WeightMap& weights, std::span<const PortfolioAsset> assets) {
  check_keys(weights, assets);
  double total = 0;
  for (const auto& asset : assets) total += weights.at(asset.table_name) * asset.expected_return;
  return total;
}

double portfolio_risk(const WeightMap& weights, std::span<const PortfolioAsset> assets) {
  check_keys(weights, assets);
  double total = 0;
  for (const auto& asset : assets) {
    const auto w = weights.at(asset.table_name);
    total += w * w * asset.risk * asset.risk;
  }
  return std::sqrt(total);
}

std::vector<PriorityEntry> prioritize(const PortfolioResult& result, std::span<const PortfolioAsset> assets) {
  check_keys(result.weights, assets);
  std::vector<double> costs;
  std::vector<double> risks;
  for (const auto& asset : assets) {
    // Lower return means higher I/O cost; rank on the inverse.
    costs.push_back(1.0 / asset.expected_return);
    risks.push_back(asset.risk);
  }
  const auto count = assets.size();

  std::vector<PriorityEntry> entries;
  for (const auto& name : result.priority_order) {
    const auto it = std::find_if(assets.begin(), assets.end(),
                                 [&](const PortfolioAsset& asset) { return asset.table_name == name; });
    const auto cost_place = standing(1.0 / it->expected_return, costs);
    const auto risk_place = standing(it->risk, risks);
    PriorityEntry entry;
    entry.rank = entries.size() + 1;
    entry.table_name = name;
    entry.weight = result.weights.at(name);
    entry.rationale = fmt::format("I/O cost {}; growth rate {}", standing_text(cost_place, count),
                                  standing_text(risk_place, count));
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace normdebt
