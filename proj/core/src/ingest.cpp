#include "normdebt/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "json.hpp"

namespace normdebt {

namespace {

using json = nlohmann::ordered_json;

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position position{1, 1};
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
    if (text[i] == '\n') {
      ++position.line;
      position.column = 1;
    } else {
      ++position.column;
    }
  }
  return position;
}

// Line of every '{' outside string literals, in document order. Valid only for text that
// already parsed as JSON.
std::vector<std::size_t> object_start_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  bool in_string = false;
  bool escaped = false;
  for (const char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      lines.push_back(line);
    }
  }
  return lines;
}

// Maps every object node of a parsed document to the line where it starts. Relies on
// ordered_json keeping document order so a pre-order walk meets objects in text order.
class LineMap {
 public:
  LineMap(const json& root, std::string_view text) : _starts(object_start_lines(text)) { walk(root); }

  std::size_t line_of(const json& node) const {
    const auto it = _lines.find(&node);
    return it == _lines.end() ? 0 : it->second;
  }

 private:
  void walk(const json& node) {
    if (node.is_object()) {
      if (_next < _starts.size()) _lines[&node] = _starts[_next];
      ++_next;
      for (const auto& [key, value] : node.items()) walk(value);
    } else if (node.is_array()) {
      for (const auto& value : node) walk(value);
    }
  }

  std::vector<std::size_t> _starts;
  std::size_t _next = 0;
  std::unordered_map<const json*, std::size_t> _lines;
};

class DiagnosticSink {
 public:
  explicit DiagnosticSink(std::string file) : _file(std::move(file)) {}

  void add(std::size_t line, std::string code, std::string message, std::size_t column = 0) {
    _diagnostics.push_back({_file, line, column, std::move(code), std::move(message)});
  }

  bool empty() const { return _diagnostics.empty(); }

  void raise_if_any() {
    if (!_diagnostics.empty()) throw IngestError(std::move(_diagnostics));
  }

  const std::string& file() const { return _file; }

 private:
  std::string _file;
  std::vector<Diagnostic> _diagnostics;
};

std::optional<json> parse_json(std::string_view text, DiagnosticSink& sink, std::size_t line_offset = 0) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& error) {
    const auto offset = error.byte == 0 ? 0 : error.byte - 1;
    const auto position = position_of(text, offset);
    std::string message = error.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    if (const auto pos = message.find("] "); pos != std::string::npos) message = message.substr(pos + 2);
    sink.add(position.line + line_offset, "E_PARSE", message, position.column);
    return std::nullopt;
  }
}

const char* type_name(const json& node) {
  if (node.is_string()) return "string";
  if (node.is_boolean()) return "boolean";
  if (node.is_number()) return "number";
  if (node.is_array()) return "array";
  if (node.is_object()) return "object";
  return "null";
}

// Reads a ["A", "B"] list into `out`; reports problems against `line`.
bool read_name_list(const json& node, std::string_view what, std::size_t line, DiagnosticSink& sink,
                    AttributeSet& out) {
  if (!node.is_array()) {
    sink.add(line, "E_TYPE", fmt::format("{} must be an array of attribute names, got {}", what, type_name(node)));
    return false;
  }
  bool ok = true;
  for (const auto& item : node) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      sink.add(line, "E_TYPE", fmt::format("{} must contain non-empty strings", what));
      ok = false;
      continue;
    }
    out.insert(item.get<std::string>());
  }
  return ok;
}

template <typename Dependency>
void read_dependencies(const json& table_node, const char* key, const TableDef& table, const AttributeSet& declared,
                       const LineMap& lines, DiagnosticSink& sink, std::vector<Dependency>& out) {
  if (!table_node.contains(key)) return;
  const auto& list = table_node.at(key);
  const auto table_line = lines.line_of(table_node);
  if (!list.is_array()) {
    sink.add(table_line, "E_TYPE", fmt::format("table '{}': \"{}\" must be an array", table.name, key));
    return;
  }
  const bool functional = std::string_view(key) == "fds";
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& node = list[i];
    const auto line = node.is_object() ? lines.line_of(node) : table_line;
    const auto what = fmt::format("table '{}' {}[{}]", table.name, key, i);
    if (!node.is_object()) {
      sink.add(line, "E_TYPE", fmt::format("{} must be an object with lhs and rhs", what));
      continue;
    }
    for (const auto& [field, value] : node.items()) {
      if (field != "lhs" && field != "rhs") {
        sink.add(line, "E_UNKNOWN_FIELD", fmt::format("{} has unknown field \"{}\"", what, field));
      }
    }
    Dependency dependency;
    bool ok = true;
    for (const auto* side : {"lhs", "rhs"}) {
      if (!node.contains(side)) {
        sink.add(line, "E_MISSING_FIELD", fmt::format("{} is missing \"{}\"", what, side));
        ok = false;
        continue;
      }
      auto& target = std::string_view(side) == "lhs" ? dependency.lhs : dependency.rhs;
      ok &= read_name_list(node.at(side), fmt::format("{}.{}", what, side), line, sink, target);
    }
    if (!ok) continue;
    if (dependency.lhs.empty() || (functional && dependency.rhs.empty())) {
      sink.add(line, "E_EMPTY_SIDE",
               fmt::format("{} needs a non-empty {}", what, dependency.lhs.empty() ? "lhs" : "rhs"));
      ok = false;
    }
    for (const auto* names : {&dependency.lhs, &dependency.rhs}) {
      for (const auto& name : *names) {
        if (!declared.contains(name)) {
          sink.add(line, "E_UNKNOWN_ATTRIBUTE", fmt::format("{} references unknown attribute '{}'", what, name));
          ok = false;
        }
      }
    }
    if (ok) out.push_back(std::move(dependency));
  }
}

struct CsvRecord {
  std::size_t line = 0;
  std::vector<Value> fields;
};

// Splits comma-separated text into records. Unterminated quotes and stray characters after
// a closing quote are reported to `sink`.
std::vector<CsvRecord> parse_csv(std::string_view text, DiagnosticSink& sink) {
  std::vector<CsvRecord> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    // Skip blank lines.
    if (text[i] == '\n' || text[i] == '\r') {
      if (text[i] == '\n') ++line;
      ++i;
      continue;
    }
    CsvRecord record;
    record.line = line;
    bool end_of_record = false;
    while (!end_of_record) {
      if (i < n && text[i] == '"') {
        std::string value;
        ++i;
        bool closed = false;
        while (i < n) {
          if (text[i] == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              value += '"';
              i += 2;
              continue;
            }
            ++i;
            closed = true;
            break;
          }
          if (text[i] == '\n') ++line;
          value += text[i++];
        }
        if (!closed) {
          sink.add(record.line, "E_CSV_QUOTE", "unterminated quoted field");
          return records;
        }
        record.fields.emplace_back(std::move(value));
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          sink.add(line, "E_CSV_QUOTE", "unexpected character after closing quote");
          while (i < n && text[i] != ',' && text[i] != '\n') ++i;
        }
      } else {
        const auto start = i;
        while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') ++i;
        if (i == start) {
          record.fields.emplace_back(std::nullopt);
        } else {
          record.fields.emplace_back(std::string(text.substr(start, i - start)));
        }
      }
      if (i < n && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < n && text[i] == '\r') ++i;
      if (i < n && text[i] == '\n') {
        ++i;
        ++line;
      }
      end_of_record = true;
    }
    records.push_back(std::move(record));
  }
  return records;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::optional<double> read_non_negative(const json& node, const char* key, std::string_view what,
                                        std::size_t line, DiagnosticSink& sink) {
  if (!node.contains(key)) {
    sink.add(line, "E_MISSING_FIELD", fmt::format("{} is missing \"{}\"", what, key));
    return std::nullopt;
  }
  const auto& value = node.at(key);
  if (!value.is_number()) {
    sink.add(line, "E_TYPE", fmt::format("{} field \"{}\" must be a number, got {}", what, key, type_name(value)));
    return std::nullopt;
  }
  const auto number = value.get<double>();
  if (!(number >= 0) || !std::isfinite(number)) {
    sink.add(line, "E_NEGATIVE", fmt::format("{} field \"{}\" must be >= 0, got {}", what, key, value.dump()));
    return std::nullopt;
  }
  return number;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError({{path.string(), 0, 0, "E_IO", "cannot open file"}});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<TableDef> parse_schema(std::string_view text, const std::string& source, Warnings* warnings) {
  DiagnosticSink sink(source);
  const auto document = parse_json(text, sink);
  sink.raise_if_any();
  const LineMap lines(*document, text);

  if (!document->is_object() || !document->contains("tables") || !document->at("tables").is_array()) {
    sink.add(1, "E_SCHEMA_SHAPE", "schema must be an object with a \"tables\" array");
    sink.raise_if_any();
  }
  for (const auto& [key, value] : document->items()) {
    if (key != "tables" && warnings) warnings->push_back(fmt::format("{}: ignoring top-level field \"{}\"", source, key));
  }

  std::vector<TableDef> tables;
  std::set<std::string> table_names;
  const auto& list = document->at("tables");
  if (list.empty() && warnings) warnings->push_back(fmt::format("{}: schema declares no tables", source));

  for (std::size_t t = 0; t < list.size(); ++t) {
    const auto& node = list[t];
    if (!node.is_object()) {
      sink.add(lines.line_of(*document), "E_TYPE", fmt::format("tables[{}] must be an object", t));
      continue;
    }
    const auto line = lines.line_of(node);
    TableDef table;
    if (!node.contains("name") || !node.at("name").is_string() || node.at("name").get<std::string>().empty()) {
      sink.add(line, "E_TABLE_NAME", fmt::format("tables[{}] needs a non-empty string \"name\"", t));
      continue;
    }
    table.name = node.at("name").get<std::string>();
    if (!table_names.insert(table.name).second) {
      sink.add(line, "E_DUPLICATE_TABLE", fmt::format("table '{}' is declared more than once", table.name));
    }
    for (const auto& [key, value] : node.items()) {
      if (key != "name" && key != "attributes" && key != "fds" && key != "mvds") {
        sink.add(line, "E_UNKNOWN_FIELD", fmt::format("table '{}' has unknown field \"{}\"", table.name, key));
      }
    }

    AttributeSet declared;
    if (!node.contains("attributes") || !node.at("attributes").is_array() || node.at("attributes").empty()) {
      sink.add(line, "E_NO_ATTRIBUTES", fmt::format("table '{}' needs a non-empty \"attributes\" array", table.name));
    } else {
      for (const auto& attribute_node : node.at("attributes")) {
        const auto attribute_line = attribute_node.is_object() ? lines.line_of(attribute_node) : line;
        if (!attribute_node.is_object() || !attribute_node.contains("name") || !attribute_node.at("name").is_string() ||
            attribute_node.at("name").get<std::string>().empty()) {
          sink.add(attribute_line, "E_ATTRIBUTE",
                   fmt::format("table '{}': each attribute needs a non-empty string \"name\"", table.name));
          continue;
        }
        Attribute attribute{attribute_node.at("name").get<std::string>(), true};
        for (const auto& [key, value] : attribute_node.items()) {
          if (key != "name" && key != "atomic") {
            sink.add(attribute_line, "E_UNKNOWN_FIELD",
                     fmt::format("attribute '{}.{}' has unknown field \"{}\"", table.name, attribute.name, key));
          }
        }
        if (attribute_node.contains("atomic")) {
          if (!attribute_node.at("atomic").is_boolean()) {
            sink.add(attribute_line, "E_TYPE",
                     fmt::format("attribute '{}.{}': \"atomic\" must be a boolean", table.name, attribute.name));
          } else {
            attribute.atomic = attribute_node.at("atomic").get<bool>();
          }
        }
        if (!declared.insert(attribute.name).second) {
          sink.add(attribute_line, "E_DUPLICATE_ATTRIBUTE",
                   fmt::format("table '{}' declares attribute '{}' more than once", table.name, attribute.name));
          continue;
        }
        table.attributes.push_back(std::move(attribute));
      }
    }
    read_dependencies(node, "fds", table, declared, lines, sink, table.fds);
    read_dependencies(node, "mvds", table, declared, lines, sink, table.mvds);
    tables.push_back(std::move(table));
  }
  sink.raise_if_any();
  return tables;
}

std::vector<TableDef> load_schema(const std::filesystem::path& path, Warnings* warnings) {
  return parse_schema(read_file(path), path.string(), warnings);
}

std::string dump_schema(std::span<const TableDef> tables) {
  auto document = json::object();
  auto list = json::array();
  for (const auto& table : tables) {
    json node;
    node["name"] = table.name;
    auto attributes = json::array();
    for (const auto& attribute : table.attributes) {
      attributes.push_back({{"name", attribute.name}, {"atomic", attribute.atomic}});
    }
    node["attributes"] = std::move(attributes);
    auto fds = json::array();
    for (const auto& fd : table.fds) fds.push_back({{"lhs", fd.lhs}, {"rhs", fd.rhs}});
    node["fds"] = std::move(fds);
    auto mvds = json::array();
    for (const auto& mvd : table.mvds) mvds.push_back({{"lhs", mvd.lhs}, {"rhs", mvd.rhs}});
    node["mvds"] = std::move(mvds);
    list.push_back(std::move(node));
  }
  document["tables"] = std::move(list);
  return document.dump(2) + "\n";
}

RelationData parse_table_data(std::string_view text, const std::string& source, std::string_view table,
                              const TableDef* declared) {
  DiagnosticSink sink(source);
  auto records = parse_csv(text, sink);
  sink.raise_if_any();

  RelationData data;
  data.table_name = std::string(table);
  if (records.empty()) {
    sink.add(1, "E_CSV_HEADER", "file has no header record");
    sink.raise_if_any();
  }
  const auto& header = records.front();
  std::set<std::string> seen;
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const auto& field = header.fields[i];
    if (!field || field->empty()) {
      sink.add(header.line, "E_CSV_HEADER", fmt::format("header column {} is empty", i + 1));
      continue;
    }
    if (!seen.insert(*field).second) {
      sink.add(header.line, "E_CSV_HEADER", fmt::format("header repeats column '{}'", *field));
    }
    data.columns.push_back(*field);
  }
  if (declared) {
    for (const auto& column : data.columns) {
      if (!declared->has_attribute(column)) {
        sink.add(header.line, "E_UNDECLARED_COLUMN",
                 fmt::format("column '{}' is not an attribute of table '{}'", column, declared->name));
      }
    }
    for (const auto& attribute : declared->attributes) {
      if (!seen.contains(attribute.name)) {
        sink.add(header.line, "E_MISSING_COLUMN",
                 fmt::format("attribute '{}' of table '{}' has no column", attribute.name, declared->name));
      }
    }
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& record = records[r];
    if (record.fields.size() != header.fields.size()) {
      sink.add(record.line, "E_CSV_RAGGED",
               fmt::format("row {} has {} fields, expected {}", record.line, record.fields.size(),
                           header.fields.size()));
      continue;
    }
    data.rows.push_back(std::move(record.fields));
  }
  sink.raise_if_any();
  return data;
}

RelationData load_table_data(const std::filesystem::path& path, std::string_view table, const TableDef* declared) {
  return parse_table_data(read_file(path), path.string(), table, declared);
}

Workload parse_workload(std::string_view text, const std::string& source) {
  DiagnosticSink sink(source);
  Workload workload;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const auto record = parse_json(line, sink, line_number - 1);
    if (!record) continue;
    if (!record->is_object()) {
      sink.add(line_number, "E_TYPE", "workload record must be a JSON object");
      continue;
    }
    constexpr std::string_view what = "record";
    bool ok = true;
    for (const auto& [key, value] : record->items()) {
      if (key != "table" && key != "kind" && key != "io_cost" && key != "rate_per_month" && key != "multi_table") {
        sink.add(line_number, "E_UNKNOWN_FIELD", fmt::format("unknown field \"{}\"", key));
        ok = false;
      }
    }
    OperationStat stat;
    if (!record->contains("table") || !record->at("table").is_string() ||
        record->at("table").get<std::string>().empty()) {
      sink.add(line_number, "E_MISSING_FIELD", "\"table\" must be a non-empty string");
      ok = false;
    } else {
      stat.table_name = record->at("table").get<std::string>();
    }
    if (!record->contains("kind") || !record->at("kind").is_string()) {
      sink.add(line_number, "E_MISSING_FIELD", "\"kind\" must be one of update, insert, delete, select");
      ok = false;
    } else if (const auto kind = parse_operation_kind(record->at("kind").get<std::string>())) {
      stat.kind = *kind;
    } else {
      sink.add(line_number, "E_KIND",
               fmt::format("unknown operation kind '{}' (expected update, insert, delete or select)",
                           record->at("kind").get<std::string>()));
      ok = false;
    }
    const auto io_cost = read_non_negative(*record, "io_cost", what, line_number, sink);
    const auto rate = read_non_negative(*record, "rate_per_month", what, line_number, sink);
    ok &= io_cost.has_value() && rate.has_value();
    if (record->contains("multi_table")) {
      if (!record->at("multi_table").is_boolean()) {
        sink.add(line_number, "E_TYPE", "\"multi_table\" must be a boolean");
        ok = false;
      } else {
        stat.multi_table = record->at("multi_table").get<bool>();
      }
    }
    if (!ok) continue;
    stat.io_cost_per_exec = *io_cost;
    stat.rate_per_month = *rate;
    workload.add(std::move(stat));
  }
  sink.raise_if_any();
  return workload;
}

Workload load_workload(const std::filesystem::path& path) { return parse_workload(read_file(path), path.string()); }

std::vector<SizeHistory> parse_size_history(std::string_view text, const std::string& source) {
  DiagnosticSink sink(source);
  auto records = parse_csv(text, sink);
  sink.raise_if_any();
  if (records.empty()) return {};

  const auto& header = records.front();
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    if (header.fields[i]) columns[*header.fields[i]] = i;
  }
  for (const auto* required : {"table", "date", "size", "unit"}) {
    if (!columns.contains(required)) {
      sink.add(header.line, "E_CSV_HEADER", fmt::format("size history header lacks column '{}'", required));
    }
  }
  if (header.fields.size() != 4) {
    sink.add(header.line, "E_CSV_HEADER", "size history header must be exactly table,date,size,unit");
  }
  sink.raise_if_any();

  std::vector<SizeHistory> histories;
  std::map<std::string, std::size_t> by_table;
  std::map<std::string, std::size_t> last_line;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& record = records[r];
    if (record.fields.size() != 4) {
      sink.add(record.line, "E_CSV_RAGGED", fmt::format("row has {} fields, expected 4", record.fields.size()));
      continue;
    }
    const auto field = [&](const char* name) -> std::string {
      const auto& value = record.fields[columns.at(name)];
      return value ? *value : std::string{};
    };
    const auto table = field("table");
    const auto date_text = field("date");
    const auto size_text = field("size");
    const auto unit_text = field("unit");
    bool ok = true;
    if (table.empty()) {
      sink.add(record.line, "E_MISSING_FIELD", "table name is empty");
      ok = false;
    }
    const auto at = parse_timestamp(date_text);
    if (!at) {
      sink.add(record.line, "E_DATE", fmt::format("cannot parse date '{}' (expected YYYY-MM-DD)", date_text));
      ok = false;
    }
    const auto size = parse_number<std::uint64_t>(size_text);
    if (!size) {
      sink.add(record.line, "E_SIZE", fmt::format("size '{}' is not a non-negative integer", size_text));
      ok = false;
    }
    const auto unit = parse_size_unit(unit_text);
    if (!unit) {
      sink.add(record.line, "E_UNIT", fmt::format("unit '{}' must be rows or pages", unit_text));
      ok = false;
    }
    if (!ok) continue;

    auto [it, inserted] = by_table.try_emplace(table, histories.size());
    if (inserted) histories.push_back({table, *unit, {}});
    auto& history = histories[it->second];
    if (history.unit != *unit) {
      sink.add(record.line, "E_UNIT_MIX",
               fmt::format("table '{}' mixes units {} and {}", table, to_string(history.unit), unit_text));
      continue;
    }
    if (!history.samples.empty()) {
      const auto previous = history.samples.back().at;
      if (*at == previous) {
        sink.add(record.line, "E_DUPLICATE_SAMPLE", fmt::format("table '{}' has two samples at {}", table, date_text));
        continue;
      }
      if (*at < previous) {
        sink.add(record.line, "E_ORDER",
                 fmt::format("table '{}': sample at {} is earlier than the sample on line {}", table, date_text,
                             last_line[table]));
        continue;
      }
    }
    history.samples.push_back({*at, *size});
    last_line[table] = record.line;
  }
  sink.raise_if_any();
  return histories;
}

std::vector<SizeHistory> load_size_history(const std::filesystem::path& path) {
  return parse_size_history(read_file(path), path.string());
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::text ? "text" : "json"; }

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::text;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

void ProjectConfig::validate() const {
  if (schema_path.empty()) throw InputError("a schema path is required");
  if (!(growth_threshold >= 0)) throw InputError(fmt::format("growth threshold must be >= 0, got {}", growth_threshold));
  if (!(effort.weight_margin >= 0)) {
    throw InputError(fmt::format("weight margin must be >= 0, got {}", effort.weight_margin));
  }
  for (const auto& [table, rate] : growth_overrides) {
    if (!(rate >= 0) || !std::isfinite(rate)) {
      throw InputError(fmt::format("growth override for '{}' must be >= 0, got {}", table, rate));
    }
  }
  if (key_search_limit == 0) throw InputError("key search limit must be positive");
}

ProjectConfig load_project_config(const std::filesystem::path& path) {
  const auto text = read_file(path);
  DiagnosticSink sink(path.string());
  const auto document = parse_json(text, sink);
  sink.raise_if_any();
  if (!document->is_object()) {
    sink.add(1, "E_TYPE", "project file must be a JSON object");
    sink.raise_if_any();
  }
  const LineMap lines(*document, text);
  const auto line = lines.line_of(*document);
  const auto base = path.parent_path();
  const auto resolve = [&](const std::string& value) {
    const std::filesystem::path candidate(value);
    return candidate.is_absolute() ? candidate : base / candidate;
  };

  ProjectConfig config;
  for (const auto& [key, value] : document->items()) {
    if (key == "schema" || key == "data_dir" || key == "workload" || key == "sizes") {
      if (!value.is_string()) {
        sink.add(line, "E_TYPE", fmt::format("\"{}\" must be a path string", key));
        continue;
      }
      const auto resolved = resolve(value.get<std::string>());
      if (key == "schema") config.schema_path = resolved;
      if (key == "data_dir") config.data_dir = resolved;
      if (key == "workload") config.workload_path = resolved;
      if (key == "sizes") config.sizes_path = resolved;
    } else if (key == "growth_overrides") {
      if (!value.is_object()) {
        sink.add(line, "E_TYPE", "\"growth_overrides\" must map table names to rates");
        continue;
      }
      for (const auto& [table, rate] : value.items()) {
        if (!rate.is_number() || !(rate.get<double>() >= 0)) {
          sink.add(lines.line_of(value), "E_TYPE", fmt::format("growth override for '{}' must be a number >= 0", table));
          continue;
        }
        config.growth_overrides[table] = rate.get<double>();
      }
    } else if (key == "risk_policy") {
      if (!value.is_string()) {
        sink.add(line, "E_TYPE", "\"risk_policy\" must be a string");
        continue;
      }
      try {
        config.risk_policy = EnumerationPolicy::parse(value.get<std::string>());
      } catch (const InputError& error) {
        sink.add(line, "E_POLICY", error.what());
      }
    } else if (key == "growth_threshold" || key == "weight_margin") {
      if (!value.is_number() || !(value.get<double>() >= 0)) {
        sink.add(line, "E_TYPE", fmt::format("\"{}\" must be a number >= 0", key));
        continue;
      }
      (key == "growth_threshold" ? config.growth_threshold : config.effort.weight_margin) = value.get<double>();
    } else if (key == "risk_top" || key == "key_search_limit") {
      if (!value.is_number_unsigned()) {
        sink.add(line, "E_TYPE", fmt::format("\"{}\" must be a non-negative integer", key));
        continue;
      }
      (key == "risk_top" ? config.effort.risk_top : config.key_search_limit) = value.get<std::size_t>();
    } else if (key == "output_format") {
      const auto format = value.is_string() ? parse_output_format(value.get<std::string>()) : std::nullopt;
      if (!format) {
        sink.add(line, "E_TYPE", "\"output_format\" must be \"text\" or \"json\"");
        continue;
      }
      config.output_format = *format;
    } else {
      sink.add(line, "E_UNKNOWN_FIELD", fmt::format("unknown field \"{}\"", key));
    }
  }
  sink.raise_if_any();
  return config;
}

}  // namespace normdebt
