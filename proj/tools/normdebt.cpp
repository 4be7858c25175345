// normdebt: find tables below fourth normal form and rank them for normalization.
//
// Exit codes: 0 success, 1 input errors, 2 capacity errors.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "normdebt/ingest.hpp"
#include "normdebt/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCapacity = 2;

struct Options {
  std::string config;
  std::string schema;
  std::string data_dir;
  std::string workload;
  std::string sizes;
  std::optional<double> threshold;
  std::string risk_policy;
  std::string format;
  std::optional<std::size_t> top;
  std::string pin_timestamp;
  std::vector<std::string> growth;  // TABLE=RATE
  std::optional<std::size_t> risk_top;
  std::optional<double> weight_margin;
  std::optional<std::size_t> key_limit;
};

void add_common_flags(CLI::App& command, Options& options) {
  command.add_option("--config", options.config, "Project file (JSON); flags override its values")
      ->check(CLI::ExistingFile);
  command.add_option("--schema", options.schema, "Schema document with tables and dependencies");
  command.add_option("--data-dir", options.data_dir, "Directory of <Table>.csv extracts")->check(CLI::ExistingDirectory);
  command.add_option("--workload", options.workload, "Workload file, one JSON record per line");
  command.add_option("--sizes", options.sizes, "Size history CSV (table,date,size,unit)");
  command.add_option("--threshold", options.threshold, "Minimum monthly growth rate for the portfolio")
      ->check(CLI::NonNegativeNumber);
  command.add_option("--risk-policy", options.risk_policy, "exact | capped:<k> | sampled:<m>[:<seed>]");
  command.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  command.add_option("--top", options.top, "Show only the first N ranked tables")->check(CLI::PositiveNumber);
  command.add_option("--pin-timestamp", options.pin_timestamp, "Use this value as the report timestamp");
  command.add_option("--growth", options.growth, "Manual growth rate override, TABLE=RATE (repeatable)")
      ->delimiter(',')
      ->type_name("TABLE=RATE");
  command.add_option("--risk-top", options.risk_top, "Tables selected by the risk-based effort count");
  command.add_option("--weight-margin", options.weight_margin,
                     "Portfolio-based effort: weights within this margin of the minimum")
      ->check(CLI::NonNegativeNumber);
  command.add_option("--key-limit", options.key_limit, "Largest table searched for candidate keys")
      ->check(CLI::PositiveNumber);
}

std::pair<std::string, double> parse_growth_override(const std::string& text) {
  const auto split = text.rfind('=');
  if (split == std::string::npos || split == 0) {
    throw normdebt::InputError("--growth expects TABLE=RATE, got '" + text + "'");
  }
  const auto rate_text = text.substr(split + 1);
  double rate = 0;
  const auto [end, ec] = std::from_chars(rate_text.data(), rate_text.data() + rate_text.size(), rate);
  if (ec != std::errc{} || end != rate_text.data() + rate_text.size() || !(rate >= 0)) {
    throw normdebt::InputError("--growth rate for '" + text.substr(0, split) + "' must be a number >= 0, got '" +
                               rate_text + "'");
  }
  return {text.substr(0, split), rate};
}

normdebt::ProjectConfig build_config(const Options& options) {
  normdebt::ProjectConfig config;
  if (!options.config.empty()) config = normdebt::load_project_config(options.config);
  if (!options.schema.empty()) config.schema_path = options.schema;
  if (!options.data_dir.empty()) config.data_dir = options.data_dir;
  if (!options.workload.empty()) config.workload_path = options.workload;
  if (!options.sizes.empty()) config.sizes_path = options.sizes;
  if (options.threshold) config.growth_threshold = *options.threshold;
  if (!options.risk_policy.empty()) config.risk_policy = normdebt::EnumerationPolicy::parse(options.risk_policy);
  if (!options.format.empty()) config.output_format = *normdebt::parse_output_format(options.format);
  if (!options.pin_timestamp.empty()) config.pinned_timestamp = options.pin_timestamp;
  for (const auto& item : options.growth) {
    const auto [table, rate] = parse_growth_override(item);
    config.growth_overrides[table] = rate;
  }
  if (options.risk_top) config.effort.risk_top = *options.risk_top;
  if (options.weight_margin) config.effort.weight_margin = *options.weight_margin;
  if (options.key_limit) config.key_search_limit = *options.key_limit;
  return config;
}

int exit_code_for(const normdebt::PriorityReport& report) {
  for (const auto& failure : report.failures) {
    if (failure.kind == "capacity") return kExitCapacity;
  }
  return report.failures.empty() ? kExitOk : kExitInput;
}

int run(const Options& options, normdebt::ReportSection sections, bool needs_workload) {
  try {
    auto config = build_config(options);
    if (needs_workload && config.workload_path.empty()) {
      std::cerr << "error: this command needs --workload\n";
      return kExitInput;
    }
    if (sections == normdebt::ReportSection::classification) {
      config.workload_path.clear();
      config.data_dir.clear();
    }
    if (sections == normdebt::ReportSection::risk && config.data_dir.empty()) {
      std::cerr << "error: this command needs --data-dir\n";
      return kExitInput;
    }
    if (sections == normdebt::ReportSection::risk) config.workload_path.clear();
    if (sections == normdebt::ReportSection::io_cost || sections == normdebt::ReportSection::portfolio) {
      config.data_dir.clear();
    }

    const auto report = normdebt::run_analysis(config);
    normdebt::RenderOptions render;
    render.format = config.output_format;
    render.sections = sections;
    render.top = options.top;
    std::cout << normdebt::render_report(report, render);
    return exit_code_for(report);
  } catch (const normdebt::Error& error) {
    std::cerr << error.what() << "\n";
    return error.kind() == normdebt::ErrorKind::capacity ? kExitCapacity : kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prioritize database normalization debt by data-quality risk and I/O cost"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "normdebt 0.1.0");

  Options options;
  struct Command {
    const char* name;
    const char* help;
    normdebt::ReportSection sections;
    bool needs_workload;
  };
  using normdebt::ReportSection;
  const Command commands[] = {
      {"classify", "Classify every table's normal form and list the debt tables", ReportSection::classification, false},
      {"risk", "Rank debt tables by risk of data inconsistency", ReportSection::risk, false},
      {"iocost", "Monthly I/O cost and growth rate of the debt tables", ReportSection::io_cost, true},
      {"prioritize", "Portfolio weights and normalization priority", ReportSection::portfolio, true},
      {"report", "Full analysis with the effort comparison", ReportSection::all, false},
  };

  std::optional<Command> selected;
  for (const auto& command : commands) {
    auto* sub = app.add_subcommand(command.name, command.help);
    add_common_flags(*sub, options);
    sub->callback([&selected, command] { selected = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const auto code = app.exit(error);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (options.config.empty() && options.schema.empty()) {
    std::cerr << "error: --schema or --config is required\n";
    return kExitInput;
  }
  return run(options, selected->sections, selected->needs_workload);
}
