#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "normdebt/report.hpp"

using namespace normdebt;
namespace fs = std::filesystem;

namespace {

const fs::path kFixture = NORMDEBT_FIXTURE_DIR;

ProjectConfig fixture_config() {
  auto config = load_project_config(kFixture / "project.json");
  config.pinned_timestamp = "2017-06-01T00:00:00Z";
  return config;
}

const TableRow& row_named(const PriorityReport& report, const std::string& name) {
  for (const auto& row : report.tables) {
    if (row.name == name) return row;
  }
  FAIL("no row named " << name);
  throw std::logic_error("unreachable");
}

std::vector<std::string> ranked(const PriorityReport& report) {
  std::vector<std::pair<std::size_t, std::string>> order;
  for (const auto& row : report.tables) {
    if (row.priority_rank) order.emplace_back(*row.priority_rank, row.name);
  }
  std::sort(order.begin(), order.end());
  std::vector<std::string> names;
  for (const auto& [rank, name] : order) names.push_back(name);
  return names;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : _path(fs::temp_directory_path() / ("normdebt_" + name)) {
    fs::remove_all(_path);
    fs::create_directories(_path);
  }
  ~TempDir() { fs::remove_all(_path); }

  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(_path / file) << text;
    return _path / file;
  }
  const fs::path& path() const { return _path; }

 private:
  fs::path _path;
};

}  // namespace

TEST_CASE("fixture normal forms") {
  const auto report = run_analysis(fixture_config());
  CHECK(report.failures.empty());
  CHECK(row_named(report, "Product").normal_form == NormalForm::unf);
  CHECK(row_named(report, "Employee").normal_form == NormalForm::nf1);
  CHECK(row_named(report, "EmployeePayHistory").normal_form == NormalForm::nf1);
  CHECK(row_named(report, "ProductProductPhoto").normal_form == NormalForm::nf1);
  CHECK(row_named(report, "WorkOrder").normal_form == NormalForm::nf2);
  CHECK_FALSE(row_named(report, "ScrapReason").debt);
  CHECK_FALSE(row_named(report, "Culture").debt);
  CHECK(report.summary.debt_table_count == 5);
}

TEST_CASE("fixture inconsistency risk matches brute-force totals") {
  const auto report = run_analysis(fixture_config());
  // A computed by enumerating every column subset of each extract.
  const std::vector<std::tuple<std::string, double, std::uint64_t>> expected{{"Product", 1153, 192},
                                                                             {"Employee", 295, 84},
                                                                             {"EmployeePayHistory", 46, 60},
                                                                             {"ProductProductPhoto", 28, 72},
                                                                             {"WorkOrder", 406, 112}};
  for (const auto& [name, a, b] : expected) {
    const auto& row = row_named(report, name);
    REQUIRE(row.risk_x.has_value());
    CHECK(*row.risk_a == a);
    CHECK(*row.risk_b == b);
    CHECK(*row.risk_x == a / static_cast<double>(b));
    CHECK_FALSE(row.risk_approximate);
  }
  CHECK_FALSE(row_named(report, "Culture").risk_x.has_value());
}

TEST_CASE("fixture costs, growth and weights") {
  const auto report = run_analysis(fixture_config());
  const std::vector<std::tuple<std::string, double, double, double>> expected{
      {"Product", 27100, 0.2, 0.050764}, {"Employee", 15000, 0.1, 0.366854},
      {"EmployeePayHistory", 12000, 0.1, 0.458568}, {"ProductProductPhoto", 20000, 0.2, 0.068785},
      {"WorkOrder", 4000, 0.5, 0.055028}};
  for (const auto& [name, cost, growth, weight] : expected) {
    const auto& row = row_named(report, name);
    CHECK(row.io_cost == cost);
    REQUIRE(row.growth_rate.has_value());
    CHECK(*row.growth_rate == doctest::Approx(growth).epsilon(1e-12));
    REQUIRE(row.weight.has_value());
    CHECK(*row.weight == doctest::Approx(weight).epsilon(1e-5));
    CHECK(row.expected_return == doctest::Approx(1 / cost));
  }
  CHECK(ranked(report) ==
        std::vector<std::string>{"Product", "WorkOrder", "ProductProductPhoto", "Employee", "EmployeePayHistory"});
  REQUIRE(report.portfolio.has_value());
}

TEST_CASE("fixture effort comparison") {
  const auto report = run_analysis(fixture_config());
  CHECK(report.summary.conventional_effort == 5);
  CHECK(report.summary.risk_based_effort == 1);
  CHECK(report.summary.portfolio_based_effort == 2);

  auto wider = fixture_config();
  wider.effort.risk_top = 3;
  wider.effort.weight_margin = 0.02;
  const auto more = run_analysis(wider);
  CHECK(more.summary.risk_based_effort == 3);
  CHECK(more.summary.portfolio_based_effort == 3);
  CHECK(more.summary.portfolio_based_effort <= more.summary.debt_table_count);
}

TEST_CASE("growth threshold leaves only the fastest table") {
  auto config = fixture_config();
  config.growth_threshold = 0.3;
  const auto report = run_analysis(config);
  CHECK(ranked(report) == std::vector<std::string>{"WorkOrder"});
  CHECK(row_named(report, "WorkOrder").weight == 1.0);
  for (const auto& name : {"Product", "Employee", "EmployeePayHistory", "ProductProductPhoto"}) {
    const auto& row = row_named(report, name);
    CHECK_FALSE(row.priority_rank.has_value());
    REQUIRE(row.exclusion.has_value());
    CHECK(row.exclusion->find("below growth threshold") == 0);
  }
}

TEST_CASE("growth overrides beat the size history") {
  auto config = fixture_config();
  config.growth_overrides["Employee"] = 0.5;
  const auto report = run_analysis(config);
  CHECK(row_named(report, "Employee").growth_rate == 0.5);
  CHECK(row_named(report, "Employee").growth_basis == "override");
}

TEST_CASE("missing size history with overrides") {
  auto config = fixture_config();
  config.sizes_path = kFixture / "no-such-sizes.csv";
  config.growth_overrides = {{"Product", 0.2}, {"WorkOrder", 0.5}};
  const auto report = run_analysis(config);
  CHECK(ranked(report) == std::vector<std::string>{"Product", "WorkOrder"});
  CHECK(row_named(report, "Employee").exclusion.has_value());
  CHECK_FALSE(report.warnings.empty());

  config.growth_overrides.clear();
  CHECK_THROWS_AS(run_analysis(config), IngestError);
}

TEST_CASE("zero growth and missing workload are excluded with a reason") {
  auto config = fixture_config();
  config.growth_overrides["Employee"] = 0;
  TempDir dir("report_workload");
  config.workload_path = dir.write("w.jsonl",
                                   "{\"table\": \"Product\", \"kind\": \"select\", \"io_cost\": 1, \"rate_per_month\": 10}\n"
                                   "{\"table\": \"Employee\", \"kind\": \"select\", \"io_cost\": 1, \"rate_per_month\": 10}\n"
                                   "{\"table\": \"WorkOrder\", \"kind\": \"select\", \"io_cost\": 2, \"rate_per_month\": 10}\n");
  const auto report = run_analysis(config);
  CHECK(row_named(report, "Employee").exclusion == std::string("defer: no interest accumulation (growth rate 0)"));
  CHECK(row_named(report, "EmployeePayHistory").exclusion == std::string("no observed workload"));
  CHECK(ranked(report) == std::vector<std::string>{"WorkOrder", "Product"});
}

TEST_CASE("a schema without debt") {
  TempDir dir("report_clean");
  ProjectConfig config;
  config.schema_path = dir.write("schema.json", R"({"tables": [{"name": "T", "attributes": [{"name": "A"}]}]})");
  config.pinned_timestamp = "2017-06-01";
  const auto report = run_analysis(config);
  CHECK(report.summary.debt_table_count == 0);
  CHECK(report.summary.conventional_effort == 0);
  CHECK_FALSE(report.portfolio.has_value());
  CHECK(render_report(report).find("No debt") != std::string::npos);
  const auto json = render_report(report, {OutputFormat::json});
  CHECK(report_from_json(json) == report);
}

TEST_CASE("classification failures do not stop the report") {
  TempDir dir("report_failure");
  ProjectConfig config;
  config.schema_path = dir.write(
      "schema.json",
      R"({"tables": [{"name": "Wide", "attributes": [{"name": "a"}, {"name": "b"}, {"name": "c"}]},
                     {"name": "P", "attributes": [{"name": "k1"}, {"name": "k2"}, {"name": "v"}],
                      "fds": [{"lhs": ["k1"], "rhs": ["v"]}]}]})");
  config.key_search_limit = 2;
  config.pinned_timestamp = "2017-06-01";
  const auto report = run_analysis(config);
  REQUIRE(report.failures.size() == 2);
  CHECK(report.failures[0].table == "Wide");
  CHECK(report.failures[0].kind == "capacity");
  CHECK_FALSE(row_named(report, "Wide").normal_form.has_value());
}

TEST_CASE("json rendering round trips and is deterministic") {
  const auto config = fixture_config();
  const auto report = run_analysis(config);
  const auto first = render_report(report, {OutputFormat::json});
  const auto second = render_report(run_analysis(config), {OutputFormat::json});
  CHECK(first == second);
  CHECK(first.find("\"format_version\": 1") != std::string::npos);
  const auto parsed = report_from_json(first);
  CHECK(parsed == report);
  CHECK(render_report(parsed, {OutputFormat::json}) == first);

  CHECK_THROWS_AS(report_from_json("{\"format_version\": 99}"), InputError);
  CHECK_THROWS_AS(report_from_json("not json"), InputError);
}

TEST_CASE("text sections and top") {
  const auto report = run_analysis(fixture_config());
  const auto all = render_report(report);
  for (const auto& heading : {"Normal forms", "Risk of data inconsistency", "I/O cost", "Portfolio model",
                              "Normalization priority", "Effort"}) {
    CHECK(all.find(heading) != std::string::npos);
  }
  RenderOptions only_risk;
  only_risk.sections = ReportSection::risk;
  only_risk.top = 2;
  const auto risk = render_report(report, only_risk);
  CHECK(risk.find("Product") != std::string::npos);
  CHECK(risk.find("WorkOrder") != std::string::npos);
  CHECK(risk.find("EmployeePayHistory") == std::string::npos);
  CHECK(risk.find("Portfolio model") == std::string::npos);
}
