#include "cli_common.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

#include <unistd.h>

#ifndef KNESERLAB_VERSION
#define KNESERLAB_VERSION "0.0.0-unknown"
#endif

namespace cli {

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw UsageError("unknown format '" + name + "' (expected text, csv or json)");
}

kneserlab::Threads Common::thread_setting() const {
  if (threads) return kneserlab::Threads{*threads};
  return kneserlab::Threads{kneserlab::threads_from_env()};
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at '" + path + "': " + ec.message());
  }
}

void Report::fail(const std::string& line, std::optional<std::string> family) {
  passed = false;
  lines.push_back("FAIL " + line);
  if (family && !counterexample) counterexample = std::move(family);
}

std::string Report::render(Format format, const std::string& suite) const {
  if (format == Format::kJson) {
    nlohmann::json j = {{"version", version()}, {"suite", suite}, {"passed", passed},
                        {"lines", lines},       {"detail", detail}};
    if (counterexample) j["counterexample"] = *counterexample;
    return j.dump(2) + "\n";
  }
  if (format == Format::kCsv) {
    std::string out = "suite,passed,line\n";
    for (const auto& line : lines) {
      std::string quoted = "\"";
      for (char c : line) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      out += suite + "," + (passed ? "1" : "0") + "," + quoted + "\"\n";
    }
    return out;
  }
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  out += std::string("verify ") + suite + ": " + (passed ? "PASS" : "FAIL") + "\n";
  if (counterexample) out += "counterexample:\n" + *counterexample;
  return out;
}

const char* version() { return KNESERLAB_VERSION; }

}  // namespace cli
