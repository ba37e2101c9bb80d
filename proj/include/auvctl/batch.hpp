#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "auvctl/metrics.hpp"

namespace auvctl {

struct BatchResult {
  Metrics metrics;
  std::optional<SimLog> log;  // kept only when requested
  std::string error;          // non-empty if the scenario threw
};

/// Reference implementation: one scenario after another.
std::vector<BatchResult> run_batch_serial(const std::vector<Scenario>& scenarios, bool keep_logs = false);

/// One scenario per OpenMP thread. Results come back in input order and are
/// identical to run_batch_serial. `max_threads` <= 0 means batch_thread_limit().
std::vector<BatchResult> run_batch_parallel(const std::vector<Scenario>& scenarios, bool keep_logs = false,
                                            int max_threads = 0);

/// OpenMP thread count, capped by AUVCTL_THREADS when it holds a positive integer.
int batch_thread_limit();

/// Reasons two scenarios cannot be compared (grid, trajectory, disturbance).
std::vector<std::string> comparison_mismatches(const Scenario& a, const Scenario& b);

struct MetricDelta {
  std::string key;
  double a = 0.0;
  double b = 0.0;
  double relative = 0.0;  // (b - a) / |a|; 0 when equal
};

struct Comparison {
  SimLog log_a, log_b;
  Metrics metrics_a, metrics_b;
  std::vector<MetricDelta> deltas;
};

/// Runs both scenarios (in parallel) under the same disturbance realization.
/// Throws std::invalid_argument on mismatched grids.
Comparison compare(const Scenario& a, const Scenario& b);

std::vector<MetricDelta> metric_deltas(const Metrics& a, const Metrics& b);

/// Worst-case structural properties of the model over a set of states.
struct ModelPropertyReport {
  double coriolis_skew = 0.0;        // max |C + C^T|
  double transform_orthogonality = 0.0;  // max |J^T J - I|
  double min_inertia_eigenvalue = 0.0;   // min eig of M(eta)
  double inertia_asymmetry = 0.0;        // max |M(eta) - M(eta)^T|
};

ModelPropertyReport model_properties_serial(const AuvParams& p, const std::vector<PlantState>& states);
ModelPropertyReport model_properties_parallel(const AuvParams& p, const std::vector<PlantState>& states);

}  // namespace auvctl
