#include "normdebt/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "json.hpp"
#include "normdebt/portfolio.hpp"
#include "normdebt/quality.hpp"
#include "normdebt/workload.hpp"

namespace normdebt {

namespace {

using json = nlohmann::ordered_json;

std::string now_utc() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  auto text = format_timestamp(now);
  if (text.size() == 10) text += "T00:00:00Z";
  return text;
}

TableRow* find_row(std::vector<TableRow>& rows, std::string_view name) {
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& row) { return row.name == name; });
  return it == rows.end() ? nullptr : &*it;
}

struct GrowthResolution {
  std::optional<double> rate;
  std::string basis;
  std::optional<std::string> problem;
};

GrowthResolution resolve_growth(const std::string& table, const ProjectConfig& config,
                                const std::vector<SizeHistory>& histories, Warnings& warnings) {
  if (const auto it = config.growth_overrides.find(table); it != config.growth_overrides.end()) {
    return {it->second, "override", std::nullopt};
  }
  const auto history = std::find_if(histories.begin(), histories.end(),
                                    [&](const SizeHistory& candidate) { return candidate.table_name == table; });
  if (history == histories.end()) return {std::nullopt, "", "no growth data"};
  try {
    const auto estimate = estimate_growth_rate(*history);
    auto basis = fmt::format("{} over {:.2f} months ({})", to_string(estimate.method), estimate.months,
                             to_string(history->unit));
    if (estimate.shrinking) {
      basis += ", shrinking: clamped to 0";
      warnings.push_back(fmt::format("table '{}' is shrinking ({:.4f} per month); growth clamped to 0", table,
                                     estimate.raw_rate));
    }
    return {estimate.rate, std::move(basis), std::nullopt};
  } catch (const EstimationError& error) {
    return {std::nullopt, "", fmt::format("growth rate unavailable: {}", error.what())};
  }
}

std::vector<SizeHistory> load_histories(const ProjectConfig& config, Warnings& warnings) {
  if (!config.sizes_path) return {};
  if (!std::filesystem::exists(*config.sizes_path) && !config.growth_overrides.empty()) {
    warnings.push_back(fmt::format("size history '{}' not found; using growth overrides only",
                                   config.sizes_path->string()));
    return {};
  }
  return load_size_history(*config.sizes_path);
}

void compute_risk(const ProjectConfig& config, const std::vector<TableDef>& schema, std::vector<TableRow>& rows,
                  Warnings& warnings) {
  std::vector<Diagnostic> problems;
  for (auto& row : rows) {
    if (!row.debt) continue;
    const auto path = config.data_dir / (row.name + ".csv");
    if (!std::filesystem::exists(path)) {
      warnings.push_back(fmt::format("no data extract for '{}' ({}); risk of inconsistency omitted", row.name,
                                     path.string()));
      continue;
    }
    const auto table = std::find_if(schema.begin(), schema.end(), [&](const TableDef& t) { return t.name == row.name; });
    try {
      const auto data = load_table_data(path, row.name, &*table);
      const auto score = inconsistency_risk(data, config.risk_policy);
      row.risk_x = score.x;
      row.risk_a = score.a_total;
      row.risk_b = score.b_total;
      row.risk_approximate = score.approximate();
      warnings.insert(warnings.end(), score.warnings.begin(), score.warnings.end());
    } catch (const IngestError& error) {
      problems.insert(problems.end(), error.diagnostics().begin(), error.diagnostics().end());
    }
  }
  if (!problems.empty()) throw IngestError(std::move(problems));
}

void compute_portfolio(const ProjectConfig& config, const std::vector<SizeHistory>& histories,
                       const Workload& workload, PriorityReport& report) {
  std::vector<TableCost> costs;
  for (auto& row : report.tables) {
    if (!row.debt) continue;
    auto growth = resolve_growth(row.name, config, histories, report.warnings);
    row.io_cost = table_io_cost(workload, row.name);
    if (!growth.rate) {
      row.exclusion = *growth.problem;
      continue;
    }
    row.growth_rate = growth.rate;
    row.growth_basis = std::move(growth.basis);
    costs.push_back({row.name, *row.io_cost, *growth.rate});
  }

  const auto high_growth = filter_high_growth(costs, config.growth_threshold);
  std::vector<PortfolioAsset> assets;
  for (const auto& cost : costs) {
    auto& row = *find_row(report.tables, cost.table_name);
    const auto kept = std::any_of(high_growth.begin(), high_growth.end(),
                                  [&](const TableCost& c) { return c.table_name == cost.table_name; });
    if (!kept) {
      row.exclusion = fmt::format("below growth threshold ({:.3f} < {:.3f} per month)", cost.growth_rate,
                                  config.growth_threshold);
    } else if (cost.io_cost <= 0) {
      row.exclusion = "no observed workload";
      report.warnings.push_back(fmt::format("table '{}' has no single-table operations in the workload", cost.table_name));
    } else if (cost.growth_rate <= 0) {
      row.exclusion = "defer: no interest accumulation (growth rate 0)";
    } else {
      row.expected_return = 1.0 / cost.io_cost;
      assets.push_back({cost.table_name, *row.expected_return, cost.growth_rate});
    }
  }
  if (assets.empty()) return;

  const auto result = tangency_weights(assets);
  report.portfolio = PortfolioSummary{result.expected_return, result.risk};
  for (const auto& entry : prioritize(result, assets)) {
    auto& row = *find_row(report.tables, entry.table_name);
    row.weight = entry.weight;
    row.priority_rank = entry.rank;
    row.rationale = entry.rationale;
  }
}

EffortSummary summarize(const PriorityReport& report, const EffortSettings& settings) {
  EffortSummary summary;
  std::vector<double> risks;
  std::optional<double> min_weight;
  for (const auto& row : report.tables) {
    if (!row.debt) continue;
    ++summary.debt_table_count;
    if (row.risk_x && *row.risk_x > 0) risks.push_back(*row.risk_x);
    if (row.weight) min_weight = std::min(min_weight.value_or(*row.weight), *row.weight);
  }
  summary.conventional_effort = summary.debt_table_count;
  summary.risk_based_effort = std::min(settings.risk_top, risks.size());
  if (min_weight) {
    for (const auto& row : report.tables) {
      if (row.weight && *row.weight <= *min_weight + settings.weight_margin + 1e-12) ++summary.portfolio_based_effort;
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

class TextTable {
 public:
  enum class Align { left, right };

  TextTable(std::vector<std::string> headers, std::vector<Align> align)
      : _headers(std::move(headers)), _align(std::move(align)) {}

  void add(std::vector<std::string> row) { _rows.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> widths(_headers.size(), 0);
    for (std::size_t c = 0; c < _headers.size(); ++c) widths[c] = _headers[c].size();
    for (const auto& row : _rows) {
      for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
      std::string text = "  ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto last = c + 1 == cells.size();
        if (_align[c] == Align::right) {
          text += fmt::format("{:>{}}", cells[c], widths[c]);
        } else {
          text += last ? cells[c] : fmt::format("{:<{}}", cells[c], widths[c]);
        }
        if (!last) text += "  ";
      }
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out += text + "\n";
    };
    line(_headers);
    for (const auto& row : _rows) line(row);
    return out;
  }

 private:
  std::vector<std::string> _headers;
  std::vector<Align> _align;
  std::vector<std::vector<std::string>> _rows;
};

using Align = TextTable::Align;

std::string format_pages(double value) {
  if (std::floor(value) == value && std::fabs(value) < 1e15) return fmt::format("{:.0f}", value);
  return fmt::format("{:.2f}", value);
}

std::vector<const TableRow*> ranked_rows(const PriorityReport& report) {
  std::vector<const TableRow*> ranked;
  for (const auto& row : report.tables) {
    if (row.priority_rank) ranked.push_back(&row);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const TableRow* a, const TableRow* b) { return *a->priority_rank < *b->priority_rank; });
  return ranked;
}

std::vector<const TableRow*> risk_rows(const PriorityReport& report) {
  std::vector<const TableRow*> rows;
  for (const auto& row : report.tables) {
    if (row.risk_x) rows.push_back(&row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const TableRow* a, const TableRow* b) {
    if (*a->risk_x != *b->risk_x) return *a->risk_x > *b->risk_x;
    return a->name < b->name;
  });
  return rows;
}

template <typename T>
std::vector<T> limit(std::vector<T> items, const std::optional<std::size_t>& top) {
  if (top && items.size() > *top) items.resize(*top);
  return items;
}

std::string render_text(const PriorityReport& report, const RenderOptions& options) {
  std::string out = "Normalization debt report\n";
  {
    TextTable header({"", ""}, {Align::left, Align::left});
    header.add({"generated at", report.provenance.generated_at});
    header.add({"schema", report.provenance.schema});
    if (!report.provenance.data_dir.empty()) header.add({"data extracts", report.provenance.data_dir});
    if (!report.provenance.workload.empty()) header.add({"workload", report.provenance.workload});
    if (!report.provenance.sizes.empty()) header.add({"size history", report.provenance.sizes});
    header.add({"risk policy", report.provenance.risk_policy});
    header.add({"growth threshold", fmt::format("{:.3f} per month", report.provenance.growth_threshold)});
    const auto rendered = header.render();
    out += rendered.substr(rendered.find('\n') + 1);
  }

  const auto debt_count = report.summary.debt_table_count;
  if (debt_count == 0 && report.failures.empty()) {
    out += fmt::format("\nNo debt: all {} table(s) are in fourth normal form.\n", report.tables.size());
  }

  if (has_section(options.sections, ReportSection::classification)) {
    out += fmt::format("\nNormal forms ({} of {} tables below 4NF)\n", debt_count, report.tables.size());
    TextTable table({"Table", "Normal form", "Debt", "Blocking violation"},
                    {Align::left, Align::left, Align::left, Align::left});
    for (const auto& row : report.tables) {
      const auto form = row.normal_form ? std::string(to_string(*row.normal_form)) : std::string("?");
      if (row.violations.empty()) {
        table.add({row.name, form, row.debt ? "yes" : "no", row.normal_form ? "" : "classification failed"});
        continue;
      }
      for (std::size_t i = 0; i < row.violations.size(); ++i) {
        const auto& violation = row.violations[i];
        const auto text = fmt::format("{}: {}", to_string(violation.target_level), violation.explanation);
        if (i == 0) {
          table.add({row.name, form, row.debt ? "yes" : "no", text});
        } else {
          table.add({"", "", "", text});
        }
      }
    }
    out += table.render();
  }

  if (has_section(options.sections, ReportSection::risk) && report.has_risk()) {
    out += "\nRisk of data inconsistency (X = A / B, lower is better)\n";
    TextTable table({"Rank", "Table", "X", "A", "B", "Exact"},
                    {Align::right, Align::left, Align::right, Align::right, Align::right, Align::left});
    std::size_t rank = 0;
    for (const auto* row : limit(risk_rows(report), options.top)) {
      table.add({std::to_string(++rank), row->name, fmt::format("{:.3f}", *row->risk_x), format_pages(*row->risk_a),
                 std::to_string(*row->risk_b), row->risk_approximate ? "no" : "yes"});
    }
    out += table.render();
  }

  if (has_section(options.sections, ReportSection::io_cost) && report.has_io_cost()) {
    out += "\nI/O cost of debt tables (pages per month)\n";
    TextTable table({"Table", "I/O cost", "Growth/month", "Growth basis"},
                    {Align::left, Align::right, Align::right, Align::left});
    for (const auto& row : report.tables) {
      if (!row.io_cost) continue;
      table.add({row.name, format_pages(*row.io_cost),
                 row.growth_rate ? fmt::format("{:.3f}", *row.growth_rate) : std::string("-"),
                 row.growth_rate ? row.growth_basis : row.exclusion.value_or("")});
    }
    out += table.render();
  }

  if (has_section(options.sections, ReportSection::portfolio) && report.has_io_cost()) {
    out += "\nPortfolio model\n";
    const auto ranked = ranked_rows(report);
    if (ranked.empty()) {
      out += "  no table qualifies for the portfolio\n";
    } else {
      TextTable variables({"Table", "Expected return (x100)", "Risk", "Weight %"},
                          {Align::left, Align::right, Align::right, Align::right});
      for (const auto& row : report.tables) {
        if (!row.weight) continue;
        variables.add({row.name, fmt::format("{:.5f}", *row.expected_return * 100.0),
                       fmt::format("{:.3f}", *row.growth_rate), fmt::format("{:.2f}", *row.weight * 100.0)});
      }
      out += variables.render();
      out += fmt::format("  E_p = {:.6e} per page-month, R_p = {:.6f}\n", report.portfolio->expected_return,
                         report.portfolio->risk);
    }

    out += "\nNormalization priority (lowest weight first)\n";
    TextTable priority({"Rank", "Table", "Weight %", "Rationale"},
                       {Align::right, Align::left, Align::right, Align::left});
    for (const auto* row : limit(ranked, options.top)) {
      priority.add({std::to_string(*row->priority_rank), row->name, fmt::format("{:.2f}", *row->weight * 100.0),
                    row->rationale});
    }
    for (const auto& row : report.tables) {
      if (row.exclusion) priority.add({"-", row.name, "-", fmt::format("excluded: {}", *row.exclusion)});
    }
    out += priority.render();
  }

  if (has_section(options.sections, ReportSection::effort)) {
    out += "\nEffort (number of tables to normalize)\n";
    TextTable effort({"Approach", "Tables"}, {Align::left, Align::right});
    effort.add({"Conventional approach (every debt table)", std::to_string(report.summary.conventional_effort)});
    effort.add({"Prioritize by risk of data inconsistency", std::to_string(report.summary.risk_based_effort)});
    effort.add({"Prioritize by portfolio (I/O cost and growth)", std::to_string(report.summary.portfolio_based_effort)});
    out += effort.render();
  }

  if (!report.failures.empty()) {
    out += "\nFailures\n";
    for (const auto& failure : report.failures) {
      out += fmt::format("  {} ({} error): {}\n", failure.table, failure.kind, failure.message);
    }
  }
  if (!report.warnings.empty()) {
    out += "\nWarnings\n";
    for (const auto& warning : report.warnings) out += fmt::format("  {}\n", warning);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

template <typename T>
json optional_value(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

json row_to_json(const TableRow& row, const RenderOptions& options) {
  json node;
  node["name"] = row.name;
  node["normal_form"] = row.normal_form ? json(std::string(to_string(*row.normal_form))) : json(nullptr);
  node["debt"] = row.debt;
  if (has_section(options.sections, ReportSection::classification)) {
    auto violations = json::array();
    for (const auto& violation : row.violations) {
      violations.push_back({{"target_level", std::string(to_string(violation.target_level))},
                            {"witness", violation.witness},
                            {"explanation", violation.explanation}});
    }
    node["violations"] = std::move(violations);
  }
  if (has_section(options.sections, ReportSection::risk)) {
    node["risk_x"] = optional_value(row.risk_x);
    node["risk_a"] = optional_value(row.risk_a);
    node["risk_b"] = optional_value(row.risk_b);
    node["risk_approximate"] = row.risk_approximate;
  }
  if (has_section(options.sections, ReportSection::io_cost) || has_section(options.sections, ReportSection::portfolio)) {
    node["io_cost"] = optional_value(row.io_cost);
    node["growth_rate"] = optional_value(row.growth_rate);
    node["growth_basis"] = row.growth_basis;
  }
  if (has_section(options.sections, ReportSection::portfolio)) {
    node["expected_return"] = optional_value(row.expected_return);
    node["weight"] = optional_value(row.weight);
    node["priority_rank"] = optional_value(row.priority_rank);
    node["rationale"] = row.rationale;
    node["exclusion"] = optional_value(row.exclusion);
  }
  return node;
}

std::string render_json(const PriorityReport& report, const RenderOptions& options) {
  json document;
  document["format_version"] = report.format_version;
  document["generated_at"] = report.provenance.generated_at;
  const auto& p = report.provenance;
  document["provenance"] = {{"schema", p.schema},
                            {"data_dir", p.data_dir},
                            {"workload", p.workload},
                            {"sizes", p.sizes},
                            {"risk_policy", p.risk_policy},
                            {"growth_threshold", p.growth_threshold},
                            {"risk_top", p.risk_top},
                            {"weight_margin", p.weight_margin},
                            {"key_search_limit", p.key_search_limit}};
  auto tables = json::array();
  for (const auto& row : report.tables) tables.push_back(row_to_json(row, options));
  document["tables"] = std::move(tables);

  if (has_section(options.sections, ReportSection::risk)) {
    auto ranking = json::array();
    for (const auto* row : limit(risk_rows(report), options.top)) ranking.push_back(row->name);
    document["risk_ranking"] = std::move(ranking);
  }
  if (has_section(options.sections, ReportSection::portfolio)) {
    auto priority = json::array();
    for (const auto* row : limit(ranked_rows(report), options.top)) priority.push_back(row->name);
    document["priority"] = std::move(priority);
    document["portfolio"] = report.portfolio ? json{{"expected_return", report.portfolio->expected_return},
                                                    {"risk", report.portfolio->risk}}
                                             : json(nullptr);
  }
  if (has_section(options.sections, ReportSection::effort)) {
    const auto& s = report.summary;
    document["summary"] = {{"debt_table_count", s.debt_table_count},
                           {"conventional_effort", s.conventional_effort},
                           {"risk_based_effort", s.risk_based_effort},
                           {"portfolio_based_effort", s.portfolio_based_effort}};
  }
  auto failures = json::array();
  for (const auto& failure : report.failures) {
    failures.push_back({{"table", failure.table}, {"kind", failure.kind}, {"message", failure.message}});
  }
  document["failures"] = std::move(failures);
  document["warnings"] = report.warnings;
  return document.dump(2) + "\n";
}

template <typename T>
std::optional<T> read_optional(const json& node, const char* key) {
  if (!node.contains(key) || node.at(key).is_null()) return std::nullopt;
  return node.at(key).get<T>();
}

NormalForm read_normal_form(const json& node) {
  const auto text = node.get<std::string>();
  const auto level = parse_normal_form(text);
  if (!level) throw InputError(fmt::format("unknown normal form '{}' in report", text));
  return *level;
}

}  // namespace

bool PriorityReport::has_risk() const {
  return std::any_of(tables.begin(), tables.end(), [](const TableRow& row) { return row.risk_x.has_value(); });
}

bool PriorityReport::has_io_cost() const {
  return std::any_of(tables.begin(), tables.end(), [](const TableRow& row) { return row.io_cost.has_value(); });
}

PriorityReport run_analysis(const ProjectConfig& config) {
  config.validate();
  PriorityReport report;
  auto& provenance = report.provenance;
  provenance.generated_at = config.pinned_timestamp.value_or(now_utc());
  provenance.schema = config.schema_path.string();
  provenance.data_dir = config.data_dir.string();
  provenance.workload = config.workload_path.string();
  provenance.sizes = config.sizes_path ? config.sizes_path->string() : std::string{};
  provenance.risk_policy = config.risk_policy.to_string();
  provenance.growth_threshold = config.growth_threshold;
  provenance.risk_top = config.effort.risk_top;
  provenance.weight_margin = config.effort.weight_margin;
  provenance.key_search_limit = config.key_search_limit;

  // Load everything first so input problems abort before any analysis output.
  const auto schema = load_schema(config.schema_path, &report.warnings);
  std::optional<Workload> workload;
  std::vector<SizeHistory> histories;
  if (!config.workload_path.empty()) {
    workload = load_workload(config.workload_path);
    histories = load_histories(config, report.warnings);
    for (const auto& name : workload->tables()) {
      const auto declared =
          std::any_of(schema.begin(), schema.end(), [&](const TableDef& table) { return table.name == name; });
      if (!declared) report.warnings.push_back(fmt::format("workload mentions undeclared table '{}'", name));
    }
  }

  // Step 1: debt tables.
  const auto scan = find_debt_tables(schema, config.key_search_limit);
  for (const auto& table : schema) {
    TableRow row;
    row.name = table.name;
    const auto debt = std::find_if(scan.debt_tables.begin(), scan.debt_tables.end(),
                                   [&](const DebtTable& candidate) { return candidate.name == table.name; });
    const auto failed = std::any_of(scan.failures.begin(), scan.failures.end(),
                                    [&](const TableFailure& failure) { return failure.name == table.name; });
    if (debt != scan.debt_tables.end()) {
      row.normal_form = debt->level;
      row.debt = true;
      for (const auto& violation : debt->violations) {
        row.violations.push_back({violation.target_level, violation.witness_text(), violation.explanation});
      }
    } else if (!failed) {
      row.normal_form = NormalForm::nf4;
    }
    report.tables.push_back(std::move(row));
  }
  for (const auto& failure : scan.failures) {
    report.failures.push_back({failure.name, to_string(failure.kind), failure.message});
  }

  // Steps 2-7: growth, threshold, I/O cost, portfolio weights and ranking.
  if (workload) compute_portfolio(config, histories, *workload, report);

  // Data quality view.
  if (!config.data_dir.empty()) compute_risk(config, schema, report.tables, report.warnings);

  report.summary = summarize(report, config.effort);
  return report;
}

std::string render_report(const PriorityReport& report, const RenderOptions& options) {
  return options.format == OutputFormat::json ? render_json(report, options) : render_text(report, options);
}

PriorityReport report_from_json(std::string_view text) {
  json document;
  try {
    document = json::parse(text.begin(), text.end());
  } catch (const json::exception& error) {
    throw InputError(fmt::format("report is not valid JSON: {}", error.what()));
  }
  try {
    PriorityReport report;
    report.format_version = document.at("format_version").get<int>();
    if (report.format_version != kReportFormatVersion) {
      throw InputError(fmt::format("unsupported report format_version {}", report.format_version));
    }
    auto& p = report.provenance;
    p.generated_at = document.at("generated_at").get<std::string>();
    const auto& provenance = document.at("provenance");
    p.schema = provenance.at("schema").get<std::string>();
    p.data_dir = provenance.at("data_dir").get<std::string>();
    p.workload = provenance.at("workload").get<std::string>();
    p.sizes = provenance.at("sizes").get<std::string>();
    p.risk_policy = provenance.at("risk_policy").get<std::string>();
    p.growth_threshold = provenance.at("growth_threshold").get<double>();
    p.risk_top = provenance.at("risk_top").get<std::size_t>();
    p.weight_margin = provenance.at("weight_margin").get<double>();
    p.key_search_limit = provenance.at("key_search_limit").get<std::size_t>();

    for (const auto& node : document.at("tables")) {
      TableRow row;
      row.name = node.at("name").get<std::string>();
      if (!node.at("normal_form").is_null()) row.normal_form = read_normal_form(node.at("normal_form"));
      row.debt = node.at("debt").get<bool>();
      if (node.contains("violations")) {
        for (const auto& violation : node.at("violations")) {
          row.violations.push_back({read_normal_form(violation.at("target_level")),
                                    violation.at("witness").get<std::string>(),
                                    violation.at("explanation").get<std::string>()});
        }
      }
      row.risk_x = read_optional<double>(node, "risk_x");
      row.risk_a = read_optional<double>(node, "risk_a");
      row.risk_b = read_optional<std::uint64_t>(node, "risk_b");
      row.risk_approximate = node.value("risk_approximate", false);
      row.io_cost = read_optional<double>(node, "io_cost");
      row.growth_rate = read_optional<double>(node, "growth_rate");
      row.growth_basis = node.value("growth_basis", std::string{});
      row.expected_return = read_optional<double>(node, "expected_return");
      row.weight = read_optional<double>(node, "weight");
      row.priority_rank = read_optional<std::size_t>(node, "priority_rank");
      row.rationale = node.value("rationale", std::string{});
      row.exclusion = read_optional<std::string>(node, "exclusion");
      report.tables.push_back(std::move(row));
    }
    if (document.contains("portfolio") && !document.at("portfolio").is_null()) {
      const auto& portfolio = document.at("portfolio");
      report.portfolio = PortfolioSummary{portfolio.at("expected_return").get<double>(), portfolio.at("risk").get<double>()};
    }
    if (document.contains("summary")) {
      const auto& summary = document.at("summary");
      report.summary.debt_table_count = summary.at("debt_table_count").get<std::size_t>();
      report.summary.conventional_effort = summary.at("conventional_effort").get<std::size_t>();
      report.summary.risk_based_effort = summary.at("risk_based_effort").get<std::size_t>();
      report.summary.portfolio_based_effort = summary.at("portfolio_based_effort").get<std::size_t>();
    }
    for (const auto& failure : document.at("failures")) {
      report.failures.push_back({failure.at("table").get<std::string>(), failure.at("kind").get<std::string>(),
                                 failure.at("message").get<std::string>()});
    }
    report.warnings = document.at("warnings").get<Warnings>();
    return report;
  } catch (const json::exception& error) {
    throw InputError(fmt::format("malformed report document: {}", error.what()));
  }
}

}  // namespace normdebt
