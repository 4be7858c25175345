#include "normdebt/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <fmt/format.h>

namespace normdebt {

namespace {

constexpr double kSecondsPerMonth = kDaysPerMonth * 86400.0;

bool parse_fixed(std::string_view text, std::size_t digits, int& out) {
  if (text.size() != digits) return false;
  out = 0;
  for (const char c : text) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
  }
  return true;
}

}  // namespace

std::string_view to_string(OperationKind kind) {
  switch (kind) {
    case OperationKind::update:
      return "update";
    case OperationKind::insert:
      return "insert";
    case OperationKind::remove:
      return "delete";
    case OperationKind::select:
      return "select";
  }
  return "?";
}

std::optional<OperationKind> parse_operation_kind(std::string_view text) {
  for (const auto kind : {OperationKind::update, OperationKind::insert, OperationKind::remove, OperationKind::select}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

Workload::Workload(std::vector<OperationStat> stats) : _stats(std::move(stats)) {}

void Workload::add(OperationStat stat) { _stats.push_back(std::move(stat)); }

std::vector<std::string> Workload::tables() const {
  std::vector<std::string> names;
  for (const auto& stat : _stats) {
    if (std::find(names.begin(), names.end(), stat.table_name) == names.end()) names.push_back(stat.table_name);
  }
  return names;
}

std::vector<OperationStat> Workload::stats_for(std::string_view table) const {
  std::vector<OperationStat> result;
  std::copy_if(_stats.begin(), _stats.end(), std::back_inserter(result),
               [&](const OperationStat& stat) { return stat.table_name == table; });
  return result;
}

bool Workload::contains(std::string_view table) const {
  return std::any_of(_stats.begin(), _stats.end(), [&](const OperationStat& stat) { return stat.table_name == table; });
}

double table_io_cost(const Workload& workload, std::string_view table) {
  double total = 0;
  for (const auto& stat : workload.stats()) {
    if (stat.table_name != table || stat.multi_table) continue;
    total += stat.io_cost_per_exec * stat.rate_per_month;
  }
  return total;
}

double table_io_cost(const Workload& workload, std::string_view table, OperationKind kind) {
  double total = 0;
  for (const auto& stat : workload.stats()) {
    if (stat.table_name != table || stat.multi_table || stat.kind != kind) continue;
    total += stat.io_cost_per_exec * stat.rate_per_month;
  }
  return total;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  int y = 0, m = 0, d = 0, hh = 0, mm = 0, ss = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!parse_fixed(text.substr(0, 4), 4, y) || !parse_fixed(text.substr(5, 2), 2, m) ||
      !parse_fixed(text.substr(8, 2), 2, d)) {
    return std::nullopt;
  }
  auto rest = text.substr(10);
  if (!rest.empty()) {
    if (rest.back() == 'Z') rest.remove_suffix(1);
    if (rest.size() != 9 || rest[0] != 'T' || rest[3] != ':' || rest[6] != ':') return std::nullopt;
    if (!parse_fixed(rest.substr(1, 2), 2, hh) || !parse_fixed(rest.substr(4, 2), 2, mm) ||
        !parse_fixed(rest.substr(7, 2), 2, ss)) {
      return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
  }
  const year_month_day date{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return Timestamp{sys_days{date}} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_timestamp(Timestamp at) {
  using namespace std::chrono;
  const auto day_start = floor<days>(at);
  const year_month_day date{day_start};
  const hh_mm_ss time{at - day_start};
  const auto y = static_cast<int>(date.year());
  const auto m = static_cast<unsigned>(date.month());
  const auto d = static_cast<unsigned>(date.day());
  if (at == day_start) return fmt::format("{:04}-{:02}-{:02}", y, m, d);
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z", y, m, d, time.hours().count(), time.minutes().count(),
                     time.seconds().count());
}

std::string_view to_string(SizeUnit unit) { return unit == SizeUnit::rows ? "rows" : "pages"; }

std::optional<SizeUnit> parse_size_unit(std::string_view text) {
  if (text == "rows") return SizeUnit::rows;
  if (text == "pages") return SizeUnit::pages;
  return std::nullopt;
}

void SizeHistory::validate() const {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].at <= samples[i - 1].at) {
      throw InputError(fmt::format("size history of '{}' is not strictly increasing in time at sample {} ({})",
                                   table_name, i + 1, format_timestamp(samples[i].at)));
    }
  }
}

std::string_view to_string(GrowthEstimate::Method method) {
  return method == GrowthEstimate::Method::geometric ? "geometric" : "arithmetic";
}

GrowthEstimate estimate_growth_rate(const SizeHistory& history) {
  if (history.samples.size() < 2) {
    throw EstimationError(fmt::format(
        "table '{}' has {} size sample(s); at least 2 are needed to estimate growth. Supply a manual growth rate",
        history.table_name, history.samples.size()));
  }
  history.validate();
  const auto& first = history.samples.front();
  const auto& last = history.samples.back();

  GrowthEstimate estimate;
  estimate.months = static_cast<double>((last.at - first.at).count()) / kSecondsPerMonth;

  const auto has_zero = std::any_of(history.samples.begin(), history.samples.end(),
                                    [](const SizeSample& sample) { return sample.size == 0; });
  if (!has_zero) {
    const auto ratio = static_cast<double>(last.size) / static_cast<double>(first.size);
    estimate.raw_rate = std::pow(ratio, 1.0 / estimate.months) - 1.0;
  } else {
    estimate.method = GrowthEstimate::Method::arithmetic;
    double base = 1;
    for (const auto& sample : history.samples) {
      if (sample.size > 0) {
        base = static_cast<double>(sample.size);
        break;
      }
    }
    const auto delta = static_cast<double>(last.size) - static_cast<double>(first.size);
    estimate.raw_rate = delta / (base * estimate.months);
  }
  estimate.shrinking = estimate.raw_rate < 0;
  estimate.rate = std::max(0.0, estimate.raw_rate);
  return estimate;
}

std::vector<TableCost> filter_high_growth(std::span<const TableCost> costs, double threshold) {
  if (!(threshold >= 0)) throw InputError(fmt::format("growth threshold must be >= 0, got {}", threshold));
  std::vector<TableCost> kept;
  std::copy_if(costs.begin(), costs.end(), std::back_inserter(kept),
               [&](const TableCost& cost) { return cost.growth_rate >= threshold; });
  return kept;
}

}  // namespace normdebt
