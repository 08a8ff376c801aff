#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kneserlab/parallel.hpp"

namespace cli {

/// Bad flag values and unreadable inputs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kText, kCsv, kJson };

Format parse_format(const std::string& name);

/// Options shared by every subcommand.
struct Common {
  std::string format = "text";
  std::string output;
  std::optional<int> threads;
  std::size_t cap = 600;

  kneserlab::Threads thread_setting() const;
};

/// Writes to `path` through a temporary file in the same directory and a
/// rename, or to stdout when path is empty.
void write_output(const std::string& path, const std::string& content);

/// Outcome of a verification suite.
struct Report {
  bool passed = true;
  std::vector<std::string> lines;
  nlohmann::json detail = nlohmann::json::object();
  /// setfam text of the first failing family, if any.
  std::optional<std::string> counterexample;

  void fail(const std::string& line, std::optional<std::string> family = std::nullopt);
  std::string render(Format format, const std::string& suite) const;
};

const char* version();

}  // namespace cli
