#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace maxmod {

/// One acceptance criterion outcome: measured values against pinned
/// tolerances, reproducible from the recorded seed.
struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::json measured;
  nlohmann::json tolerance;
  std::string details;
  std::uint64_t seed = 0;
};

using CheckFn = std::function<CheckResult(std::uint64_t seed, int jobs)>;

/// Registry of named acceptance checks (the report subcommand runs subsets
/// of these; the acceptance suite runs all of them).
const std::vector<std::string>& check_names();
CheckResult run_check(const std::string& name, std::uint64_t seed, int jobs);

}  // namespace maxmod
