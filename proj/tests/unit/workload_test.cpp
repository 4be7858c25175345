#include <chrono>
#include <random>

#include "doctest.h"
#include "normdebt/workload.hpp"

using namespace normdebt;
using std::chrono::seconds;

namespace {

Timestamp at(const char* text) { return *parse_timestamp(text); }

SizeHistory history(std::vector<SizeSample> samples) { return {"T", SizeUnit::rows, std::move(samples)}; }

// `months` average months after `start`.
Timestamp months_after(Timestamp start, double months) {
  return start + seconds(static_cast<long long>(months * kDaysPerMonth * 86400));
}

Workload product_workload() {
  Workload workload;
  for (auto [rate, cost] : {std::pair{3000.0, 2.0}, {5000, 2}, {4000, 1}}) {
    workload.add({"Product", OperationKind::select, cost, rate, false});
  }
  workload.add({"Product", OperationKind::update, 2, 2000, false});
  workload.add({"Product", OperationKind::update, 1, 3000, false});
  workload.add({"Product", OperationKind::insert, 1, 100, false});
  return workload;
}

}  // namespace

TEST_CASE("Staff monthly I/O cost") {
  Workload workload;
  workload.add({"Staff", OperationKind::update, 2, 100, false});
  workload.add({"Staff", OperationKind::insert, 1, 50, false});
  workload.add({"Staff", OperationKind::select, 5, 200, false});
  workload.add({"Staff", OperationKind::select, 3, 500, false});
  CHECK(table_io_cost(workload, "Staff") == 2750);
}

TEST_CASE("Product monthly I/O cost") {
  const auto workload = product_workload();
  CHECK(table_io_cost(workload, "Product") == 27100);
  CHECK(table_io_cost(workload, "Missing") == 0);
  CHECK(table_io_cost(Workload{}, "Product") == 0);
}

TEST_CASE("cost is additive over operation kinds and linear in rates") {
  auto workload = product_workload();
  workload.add({"Product", OperationKind::remove, 4, 25, false});
  double by_kind = 0;
  for (auto kind : {OperationKind::update, OperationKind::insert, OperationKind::remove, OperationKind::select}) {
    by_kind += table_io_cost(workload, "Product", kind);
  }
  CHECK(by_kind == table_io_cost(workload, "Product"));
  CHECK(table_io_cost(workload, "Product", OperationKind::remove) == 100);

  Workload doubled;
  for (auto stat : workload.stats()) {
    stat.rate_per_month *= 2;
    doubled.add(stat);
  }
  CHECK(table_io_cost(doubled, "Product") == 2 * table_io_cost(workload, "Product"));
}

TEST_CASE("join operations do not count") {
  auto workload = product_workload();
  const double before = table_io_cost(workload, "Product");
  workload.add({"Product", OperationKind::select, 10, 1000, true});
  CHECK(table_io_cost(workload, "Product") == before);

  const auto original = product_workload();
  Workload toggled;
  for (auto stat : original.stats()) {
    stat.multi_table = stat.kind == OperationKind::insert;
    toggled.add(stat);
  }
  CHECK(table_io_cost(toggled, "Product") == before - 100);
}

TEST_CASE("workload groups by first appearance") {
  Workload workload;
  workload.add({"B", OperationKind::select, 1, 1, false});
  workload.add({"A", OperationKind::select, 1, 1, false});
  workload.add({"B", OperationKind::insert, 2, 1, false});
  CHECK(workload.tables() == std::vector<std::string>{"B", "A"});
  REQUIRE(workload.stats_for("B").size() == 2);
  CHECK(workload.stats_for("B")[1].kind == OperationKind::insert);
  CHECK(workload.contains("A"));
  CHECK_FALSE(workload.contains("C"));
}

TEST_CASE("operation kind names") {
  CHECK(to_string(OperationKind::remove) == "delete");
  CHECK(parse_operation_kind("delete") == OperationKind::remove);
  CHECK_FALSE(parse_operation_kind("merge").has_value());
}

TEST_CASE("timestamps") {
  CHECK(format_timestamp(at("2017-01-01")) == "2017-01-01");
  CHECK(format_timestamp(at("2017-01-31T10:33:36Z")) == "2017-01-31T10:33:36Z");
  CHECK(at("2017-01-31T10:33:36") == at("2017-01-31T10:33:36Z"));
  CHECK(at("2016-02-29") < at("2016-03-01"));
  for (const auto& bad : {"", "2017-13-01", "2017-02-30", "17-01-01", "2017-01-01T25:00:00", "2017-01-01x"}) {
    CHECK_FALSE(parse_timestamp(bad).has_value());
  }
}

TEST_CASE("growth over exactly one month") {
  const auto start = at("2017-01-01");
  const auto estimate = estimate_growth_rate(history({{start, 1000}, {months_after(start, 1), 1200}}));
  CHECK(estimate.rate == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(estimate.months == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(estimate.method == GrowthEstimate::Method::geometric);
  CHECK_FALSE(estimate.shrinking);
}

TEST_CASE("growth compounds over two months") {
  const auto start = at("2017-01-01");
  const auto estimate = estimate_growth_rate(
      history({{start, 1000}, {months_after(start, 1), 1100}, {months_after(start, 2), 1440}}));
  CHECK(estimate.rate == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("shrinking tables clamp to zero") {
  const auto start = at("2017-01-01");
  const auto estimate = estimate_growth_rate(history({{start, 1000}, {months_after(start, 1), 900}}));
  CHECK(estimate.rate == 0);
  CHECK(estimate.raw_rate == doctest::Approx(-0.1));
  CHECK(estimate.shrinking);
}

TEST_CASE("zero sizes use the arithmetic rule") {
  const auto start = at("2017-01-01");
  const auto from_zero = estimate_growth_rate(history({{start, 0}, {months_after(start, 2), 50}}));
  CHECK(from_zero.method == GrowthEstimate::Method::arithmetic);
  CHECK(from_zero.rate == doctest::Approx(0.5));  // relative to the first positive size

  const auto all_zero = estimate_growth_rate(history({{start, 0}, {months_after(start, 1), 0}}));
  CHECK(all_zero.rate == 0);
  CHECK_FALSE(all_zero.shrinking);

  const auto to_zero = estimate_growth_rate(history({{start, 100}, {months_after(start, 1), 0}}));
  CHECK(to_zero.method == GrowthEstimate::Method::arithmetic);
  CHECK(to_zero.rate == 0);
  CHECK(to_zero.shrinking);
}

TEST_CASE("growth needs two samples") {
  CHECK_THROWS_AS(estimate_growth_rate(history({{at("2017-01-01"), 10}})), EstimationError);
  CHECK_THROWS_AS(estimate_growth_rate(history({})), EstimationError);
}

TEST_CASE("history validation") {
  CHECK_THROWS_AS(history({{at("2017-02-01"), 10}, {at("2017-01-01"), 20}}).validate(), InputError);
  CHECK_THROWS_AS(history({{at("2017-01-01"), 10}, {at("2017-01-01"), 20}}).validate(), InputError);
  CHECK_NOTHROW(history({{at("2017-01-01"), 10}, {at("2017-01-02"), 20}}).validate());
}

TEST_CASE("growth rate ignores the unit scale and is repeatable") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> size(1, 100000);
  std::uniform_int_distribution<int> day(1, 400);
  for (int trial = 0; trial < 200; ++trial) {
    const auto start = at("2016-01-01");
    const auto end = start + std::chrono::days(day(rng));
    const auto base = history({{start, size(rng)}, {end, size(rng)}});
    auto scaled = base;
    for (auto& sample : scaled.samples) sample.size *= 7;
    const auto rate = estimate_growth_rate(base);
    CHECK(estimate_growth_rate(scaled).raw_rate == doctest::Approx(rate.raw_rate).epsilon(1e-12));
    CHECK(estimate_growth_rate(base).raw_rate == rate.raw_rate);
  }
}

TEST_CASE("high growth filter") {
  const std::vector<TableCost> costs{{"Product", 27100, 0.2},
                                     {"Employee", 15000, 0.1},
                                     {"EmployeePayHistory", 12000, 0.1},
                                     {"ProductProductPhoto", 20000, 0.2},
                                     {"WorkOrder", 4000, 0.5}};
  CHECK(filter_high_growth(costs, 0.05).size() == 5);
  const auto fast = filter_high_growth(costs, 0.3);
  REQUIRE(fast.size() == 1);
  CHECK(fast[0].table_name == "WorkOrder");
  CHECK(filter_high_growth(costs, 0.2).size() == 3);
  CHECK(filter_high_growth({}, 0.1).empty());
  CHECK_THROWS_AS(filter_high_growth(costs, -0.1), InputError);
}
