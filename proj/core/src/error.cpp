#include "normdebt/error.hpp"

#include <fmt/format.h>

namespace normdebt {

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& diagnostic : diagnostics) {
    if (!out.empty()) out += '\n';
    out += diagnostic.to_string();
  }
  return out;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
      return "input";
    case ErrorKind::capacity:
      return "capacity";
    case ErrorKind::estimation:
      return "estimation";
  }
  return "unknown";
}

std::string Diagnostic::to_string() const {
  if (line == 0) return fmt::format("{}: error [{}]: {}", file, code, message);
  if (column == 0) return fmt::format("{}:{}: error [{}]: {}", file, line, code, message);
  return fmt::format("{}:{}:{}: error [{}]: {}", file, line, column, code, message);
}

IngestError::IngestError(std::vector<Diagnostic> diagnostics)
    : InputError(join_diagnostics(diagnostics)), _diagnostics(std::move(diagnostics)) {}

}  // namespace normdebt
