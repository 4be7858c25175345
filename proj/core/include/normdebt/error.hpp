#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace normdebt {

enum class ErrorKind {
  input,       // malformed or inconsistent user input
  capacity,    // a configured search or enumeration limit was exceeded
  estimation,  // not enough data to estimate a quantity
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), _kind(kind) {}

  ErrorKind kind() const { return _kind; }

 private:
  ErrorKind _kind;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error(ErrorKind::input, message) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& message) : Error(ErrorKind::capacity, message) {}
};

class EstimationError : public Error {
 public:
  explicit EstimationError(const std::string& message) : Error(ErrorKind::estimation, message) {}
};

// One located problem in an input file. `line` and `column` are 1-based; 0 means unknown.
struct Diagnostic {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string code;
  std::string message;

  std::string to_string() const;
  bool operator==(const Diagnostic&) const = default;
};

// Raised by the loaders once a file has been fully scanned; carries every problem found.
class IngestError : public InputError {
 public:
  explicit IngestError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return _diagnostics; }

 private:
  std::vector<Diagnostic> _diagnostics;
};

using Warnings = std::vector<std::string>;

}  // namespace normdebt
