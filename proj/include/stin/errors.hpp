#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stin {

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoCandidate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidReference : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class InvalidConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidComparison : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One violated constraint of a configuration field.
struct ConfigIssue {
  std::string key;
  std::string constraint;
};

/// Aggregated validation failure; the message lists every offending field.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : std::invalid_argument(render(issues)), issues_(std::move(issues)) {}

  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string render(const std::vector<ConfigIssue>& issues) {
    std::string out = "invalid configuration:";
    for (const auto& issue : issues) out += "\n  " + issue.key + ": " + issue.constraint;
    return out;
  }

  std::vector<ConfigIssue> issues_;
};

/// Malformed configuration text, with a 1-based location.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace stin
