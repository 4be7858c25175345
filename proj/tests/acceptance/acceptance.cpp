// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "normdebt/report.hpp"
#include "oracles.hpp"

using namespace normdebt;

namespace {

const std::filesystem::path kFixture = NORMDEBT_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
};

ProjectConfig fixture_config() {
  auto config = load_project_config(kFixture / "project.json");
  config.pinned_timestamp = "2017-06-01T00:00:00Z";
  return config;
}

Outcome staff_io_cost() {
  Workload workload;
  workload.add({"Staff", OperationKind::update, 2, 100, false});
  workload.add({"Staff", OperationKind::insert, 1, 50, false});
  workload.add({"Staff", OperationKind::select, 5, 200, false});
  workload.add({"Staff", OperationKind::select, 3, 500, false});
  const double cost = table_io_cost(workload, "Staff");
  return {cost == 2750, "Staff = " + std::to_string(cost)};
}

Outcome product_io_cost() {
  Workload workload;
  workload.add({"Product", OperationKind::select, 2, 3000, false});
  workload.add({"Product", OperationKind::select, 2, 5000, false});
  workload.add({"Product", OperationKind::select, 1, 4000, false});
  workload.add({"Product", OperationKind::update, 2, 2000, false});
  workload.add({"Product", OperationKind::update, 1, 3000, false});
  workload.add({"Product", OperationKind::insert, 1, 100, false});
  const double cost = table_io_cost(workload, "Product");
  return {cost == 27100, "Product = " + std::to_string(cost)};
}

Outcome published_weights() {
  const std::vector<PortfolioAsset> assets{{"Product", 0.003, 0.2},
                                           {"Employee", 0.006, 0.1},
                                           {"EmployeePayHistory", 0.008, 0.1},
                                           {"ProductProductPhoto", 0.005, 0.2},
                                           {"WorkOrder", 0.025, 0.5}};
  const std::vector<double> published{4.4, 35.29, 47.06, 7.3, 5.8};
  const auto result = tangency_weights(assets);
  Outcome outcome;
  for (std::size_t i = 0; i < assets.size(); ++i) {
    const double percent = 100 * result.weights.at(assets[i].table_name);
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%s%.4f", outcome.detail.empty() ? "" : " ", percent);
    outcome.detail += buffer;
    if (std::abs(percent - published[i]) > 0.1) outcome.pass = false;
  }
  return outcome;
}

std::vector<std::string> ranked(const PriorityReport& report) {
  std::vector<std::string> names(report.tables.size());
  std::size_t count = 0;
  for (const auto& row : report.tables) {
    if (row.priority_rank) {
      names.at(*row.priority_rank - 1) = row.name;
      ++count;
    }
  }
  names.resize(count);
  return names;
}

Outcome fixture_priority() {
  const auto order = ranked(run_analysis(fixture_config()));
  Outcome outcome;
  for (const auto& name : order) outcome.detail += (outcome.detail.empty() ? "" : ", ") + name;
  const auto tail_ok = [&](const std::string& a, const std::string& b) {
    return (a == "Employee" && b == "EmployeePayHistory") || (a == "EmployeePayHistory" && b == "Employee");
  };
  outcome.pass = order.size() == 5 && order[0] == "Product" && order[1] == "WorkOrder" && tail_ok(order[3], order[4]);
  return outcome;
}

Outcome effort_counts() {
  const auto summary = run_analysis(fixture_config()).summary;
  return {summary.conventional_effort == 5 && summary.risk_based_effort == 1 && summary.portfolio_based_effort == 2,
          "conventional " + std::to_string(summary.conventional_effort) + ", risk " +
              std::to_string(summary.risk_based_effort) + ", portfolio " +
              std::to_string(summary.portfolio_based_effort)};
}

Outcome risk_properties() {
  std::mt19937_64 rng(2024);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto data = oracle::random_relation(rng, 12, 200, 6);
    const auto score = inconsistency_risk(data);
    if (score.a_total != static_cast<double>(oracle::duplicate_total(data)) || score.x != oracle::risk(data)) {
      ++mismatches;
    }
  }
  int law_failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto data = oracle::random_relation(rng, 8, 30, trial % 2 ? 40 : 4);
    const double x = inconsistency_risk(data).x;
    bool distinct = true;
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
      std::set<Value> seen;
      for (const auto& row : data.rows) distinct = seen.insert(row[c]).second && distinct;
    }
    if ((x == 0) != distinct) ++law_failures;
    data.rows.push_back(data.rows[std::uniform_int_distribution<std::size_t>(0, data.rows.size() - 1)(rng)]);
    if (inconsistency_risk(data).x < x) ++law_failures;
  }
  return {mismatches == 0 && law_failures == 0, "oracle mismatches " + std::to_string(mismatches) + "/200, law failures " +
                                                    std::to_string(law_failures) + "/500"};
}

Outcome classifier_properties() {
  std::mt19937_64 rng(4096);
  int disagreements = 0;
  int nesting_failures = 0;
  std::vector<int> histogram(6, 0);
  const NormalForm levels[] = {NormalForm::nf1, NormalForm::nf2, NormalForm::nf3, NormalForm::bcnf, NormalForm::nf4};
  for (int trial = 0; trial < 300; ++trial) {
    const auto table = oracle::random_schema(rng);
    const auto result = classify_normal_form(table);
    ++histogram[static_cast<int>(result.level)];
    if (result.level != oracle::classify(table)) ++disagreements;
    for (auto level : levels) {
      if (level <= result.level && !level_violations(table, level).empty()) ++nesting_failures;
    }
  }
  std::string spread;
  for (int level = 0; level < 6; ++level) {
    spread += (level ? " " : "") + std::string(to_string(static_cast<NormalForm>(level))) + "=" +
              std::to_string(histogram[level]);
  }
  return {disagreements == 0 && nesting_failures == 0, "oracle disagreements " + std::to_string(disagreements) +
                                                           "/300, nesting failures " + std::to_string(nesting_failures) +
                                                           " (" + spread + ")"};
}

Outcome portfolio_properties() {
  std::mt19937_64 rng(8192);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> ret(0.001, 0.05);
  std::uniform_real_distribution<double> risk(0.05, 0.6);
  int failures = 0;
  double worst_grid = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PortfolioAsset> assets;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) assets.push_back({"t" + std::to_string(i), ret(rng), risk(rng)});
    const auto result = tangency_weights(assets);

    double sum = 0;
    for (const auto& [name, w] : result.weights) sum += w;
    if (std::abs(sum - 1) > 1e-9) ++failures;

    auto scaled_return = assets;
    auto scaled_risk = assets;
    for (auto& a : scaled_return) a.expected_return *= 100;
    for (auto& a : scaled_risk) a.risk *= 3.7;
    const auto by_return = tangency_weights(scaled_return);
    const auto by_risk = tangency_weights(scaled_risk);
    const auto grid = oracle::grid_search_weights(assets, 1000);
    for (std::size_t i = 0; i < assets.size(); ++i) {
      const double w = result.weights.at(assets[i].table_name);
      if (std::abs(by_return.weights.at(assets[i].table_name) - w) > 1e-12) ++failures;
      if (std::abs(by_risk.weights.at(assets[i].table_name) - w) > 1e-12) ++failures;
      worst_grid = std::max(worst_grid, std::abs(grid[i] - w));
    }
  }
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "failures %d, largest grid gap %.4f", failures, worst_grid);
  return {failures == 0 && worst_grid <= 0.005, buffer};
}

Outcome deterministic_json() {
  const auto config = fixture_config();
  const RenderOptions json{OutputFormat::json};
  const auto first = render_report(run_analysis(config), json);
  const auto second = render_report(run_analysis(config), json);
  return {first == second && !first.empty(), std::to_string(first.size()) + " bytes"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "Staff I/O cost is 2750", staff_io_cost},
      {"AC2", "Product I/O cost is 27100", product_io_cost},
      {"AC3", "published weights within 0.1 point", published_weights},
      {"AC4", "fixture priority order", fixture_priority},
      {"AC5", "effort counts 5 / 1 / 2", effort_counts},
      {"AC6", "inconsistency risk oracle and laws", risk_properties},
      {"AC7", "classifier oracle and nesting", classifier_properties},
      {"AC8", "portfolio normalization, scale invariance, grid search", portfolio_properties},
      {"AC9", "byte-identical json with pinned timestamp", deterministic_json},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%s] (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", criterion.id, criterion.name,
                outcome.detail.c_str(), elapsed);
    if (!outcome.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
