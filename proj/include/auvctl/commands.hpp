#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "auvctl/batch.hpp"
#include "auvctl/config.hpp"

namespace auvctl {

/// `case1`, `case2`, or a path to a config file. Throws ConfigError / IoError.
Scenario load_scenario(const std::string& spec);

struct RunReport {
  std::string name;
  std::string digest;
  Metrics metrics;
  bool unstable = false;
  std::string diagnostic;
  std::vector<std::filesystem::path> files;
};

/// Runs the scenario, writes `<name>.csv` and `<name>.metrics.txt` into out_dir.
RunReport cmd_run(const Scenario& sc, const std::filesystem::path& out_dir);

struct CompareReport {
  RunReport a, b;
  std::vector<MetricDelta> deltas;
  std::vector<std::filesystem::path> files;  // both CSVs, both metric files, compare.txt
};

/// Rejects mismatched grids before running anything.
CompareReport cmd_compare(const Scenario& a, const Scenario& b, const std::filesystem::path& out_dir);

struct SweepRow {
  double value = 0.0;
  std::string digest;
  Metrics metrics;
  std::string error;
};

struct SweepReport {
  std::string param;
  std::vector<SweepRow> rows;  // in the order of the given values
  std::filesystem::path table;
  bool any_unstable() const;
};

/// One run per value; writes sweep.csv into out_dir. An empty value list or an
/// invalid path/value is rejected before any run.
SweepReport cmd_sweep(const Scenario& base, const std::string& param, const std::vector<double>& values,
                      const std::filesystem::path& out_dir);

std::string format_run_summary(const RunReport& r);
std::string format_compare_table(const CompareReport& r);
std::string format_sweep_table(const SweepReport& r);

}  // namespace auvctl
