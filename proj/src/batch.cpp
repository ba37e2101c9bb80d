#include "auvctl/batch.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace auvctl {

namespace {

BatchResult run_one(const Scenario& sc, bool keep_logs) {
  BatchResult r;
  try {
    SimLog log = run_scenario(sc);
    r.metrics = compute_metrics(log);
    if (keep_logs) r.log = std::move(log);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

void check_state(const AuvParams& p, const PlantState& x, ModelPropertyReport& r) {
  const Mat4 J = transform_matrix(x.eta(3));
  const Vec4 v = J.transpose() * x.eta_dot;
  const BodyMatrices b = body_frame_matrices(p, v);
  const Mat4 M = earth_inertia(p, x.eta(3));
  r.coriolis_skew = std::max(r.coriolis_skew, (b.C + b.C.transpose()).cwiseAbs().maxCoeff());
  r.transform_orthogonality =
      std::max(r.transform_orthogonality, (J.transpose() * J - Mat4::Identity()).cwiseAbs().maxCoeff());
  r.inertia_asymmetry = std::max(r.inertia_asymmetry, (M - M.transpose()).cwiseAbs().maxCoeff());
  const double eig = Eigen::SelfAdjointEigenSolver<Mat4>(M, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  r.min_inertia_eigenvalue = std::min(r.min_inertia_eigenvalue, eig);
}

}  // namespace

int batch_thread_limit() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("AUVCTL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

std::vector<BatchResult> run_batch_serial(const std::vector<Scenario>& scenarios, bool keep_logs) {
  std::vector<BatchResult> out;
  out.reserve(scenarios.size());
  for (const auto& sc : scenarios) out.push_back(run_one(sc, keep_logs));
  return out;
}

std::vector<BatchResult> run_batch_parallel(const std::vector<Scenario>& scenarios, bool keep_logs,
                                            int max_threads) {
  std::vector<BatchResult> out(scenarios.size());
  const int threads = max_threads > 0 ? max_threads : batch_thread_limit();
  const auto n = static_cast<std::ptrdiff_t>(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = run_one(scenarios[static_cast<std::size_t>(i)], keep_logs);
  }
  return out;
}

std::vector<std::string> comparison_mismatches(const Scenario& a, const Scenario& b) {
  std::vector<std::string> v;
  if (a.duration != b.duration) v.emplace_back("duration differs");
  if (a.Ts != b.Ts) v.emplace_back("Ts differs");
  if (!(a.trajectory == b.trajectory)) v.emplace_back("trajectory differs");
  if (!(a.disturbance == b.disturbance)) v.emplace_back("disturbance (or seed) differs");
  return v;
}

std::vector<MetricDelta> metric_deltas(const Metrics& a, const Metrics& b) {
  const auto fa = metric_fields(a);
  const auto fb = metric_fields(b);
  std::vector<MetricDelta> out;
  out.reserve(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    MetricDelta d{fa[i].first, fa[i].second, fb[i].second, 0.0};
    if (d.a != d.b) {
      d.relative = d.a != 0.0 ? (d.b - d.a) / std::abs(d.a)
                              : std::copysign(std::numeric_limits<double>::infinity(), d.b - d.a);
    }
    out.push_back(d);
  }
  return out;
}

Comparison compare(const Scenario& a, const Scenario& b) {
  if (const auto v = comparison_mismatches(a, b); !v.empty()) {
    std::string msg = "scenarios cannot be compared:";
    for (const auto& m : v) msg += " " + m + ";";
    throw std::invalid_argument(msg);
  }
  auto results = run_batch_parallel({a, b}, true, std::min(2, batch_thread_limit()));
  for (const auto& r : results) {
    if (!r.error.empty()) throw std::invalid_argument(r.error);
  }
  Comparison c;
  c.log_a = std::move(*results[0].log);
  c.log_b = std::move(*results[1].log);
  c.metrics_a = results[0].metrics;
  c.metrics_b = results[1].metrics;
  c.deltas = metric_deltas(c.metrics_a, c.metrics_b);
  return c;
}

ModelPropertyReport model_properties_serial(const AuvParams& p, const std::vector<PlantState>& states) {
  ModelPropertyReport r;
  r.min_inertia_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& x : states) check_state(p, x, r);
  return r;
}

ModelPropertyReport model_properties_parallel(const AuvParams& p, const std::vector<PlantState>& states) {
  double skew = 0.0, orth = 0.0, asym = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(states.size());
#pragma omp parallel for reduction(max : skew, orth, asym) reduction(min : min_eig) num_threads(batch_thread_limit())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ModelPropertyReport local;
    local.min_inertia_eigenvalue = std::numeric_limits<double>::infinity();
    check_state(p, states[static_cast<std::size_t>(i)], local);
    skew = std::max(skew, local.coriolis_skew);
    orth = std::max(orth, local.transform_orthogonality);
    asym = std::max(asym, local.inertia_asymmetry);
    min_eig = std::min(min_eig, local.min_inertia_eigenvalue);
  }
  return {skew, orth, min_eig, asym};
}

}  // namespace auvctl
