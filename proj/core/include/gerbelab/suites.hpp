#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gerbelab::suites {

struct RunConfig {
  std::string suite = "all";
  std::uint64_t seed = 1;
  long long samples = 0;  // 0 = suite default
  int resolution = 3;
  int n = 0;              // spectral only; 0 = 2,3,4
  std::map<std::string, double> tolerances;
  std::string json_path;  // empty = do not write a file
};

struct CheckRecord {
  std::string name;
  double value = 0.0;  // max residual or exact figure
  bool pass = false;
  double seconds = 0.0;
};

struct Report {
  std::string suite;
  RunConfig config;
  std::vector<CheckRecord> checks;
  bool verdict = false;

  /// with_times=false strips wall-time fields, leaving a byte-stable
  /// document for identical configs.
  std::string to_json(bool with_times = true) const;
  std::string table() const;
};

struct SuiteInfo {
  std::string name;
  std::string description;
};

/// The named suites, in the order `all` runs them, plus `all` itself.
std::vector<SuiteInfo> list_suites();

/// Run one suite.  Unknown names throw std::invalid_argument.  Per-check
/// failures are recorded in the report, not thrown.
Report run(const RunConfig& config);

}  // namespace gerbelab::suites
