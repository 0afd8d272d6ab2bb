#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

namespace convexkit::suites {

/// Configuration shared by every randomized verification suite. Identical
/// configurations replay identical reports byte for byte.
struct RunConfig {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  double resolution = 1.0 / 16;
  std::map<std::string, int> trial_counts;  // per-suite overrides
  std::string output_path;
  bool timing = false;  // wall-clock section breaks determinism, off by default

  int trials(const std::string& suite, int fallback) const {
    const auto it = trial_counts.find(suite);
    return it == trial_counts.end() ? fallback : it->second;
  }
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  long trials = 0;
  long failures = 0;
  nlohmann::json details;  // stats, witnesses, residual maxima
};

using SuiteFn = SuiteResult (*)(const RunConfig&);

/// Name -> suite, in canonical execution order.
const std::vector<std::pair<std::string, SuiteFn>>& registry();

/// Runs one named suite; throws Error for unknown names.
SuiteResult run_suite(const std::string& name, const RunConfig& config);

/// Runs the given suites ("all" expands to the registry) and assembles the
/// machine-readable report.
nlohmann::json run_report(const RunConfig& config,
                          const std::vector<std::string>& names);

}  // namespace convexkit::suites
