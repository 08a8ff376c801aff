#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "cli_common.hpp"

namespace cli {

struct SuiteConfig {
  int n = 0;
  int r = 0;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  std::size_t cap = 600;
  kneserlab::Threads threads;
};

using Suite = std::function<Report(const SuiteConfig&)>;

/// ekr, hilton-milner, matching, setpairs, supersat, shadow, container.
const std::map<std::string, Suite>& suites();

}  // namespace cli
