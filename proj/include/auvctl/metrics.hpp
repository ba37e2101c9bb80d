#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "auvctl/simulation.hpp"

namespace auvctl {

struct AxisMetrics {
  double rmse = 0.0;
  double iae = 0.0;         // sum |e| Ts
  double max_abs = 0.0;
  double effort = 0.0;      // sum |tau_bar| Ts
  double chattering = 0.0;  // sum |tau_bar(k) - tau_bar(k-1)|
};

struct WindowMetrics {
  std::array<AxisMetrics, kAxes> axis{};
  double rmse = 0.0;           // over all four axes
  double position_rmse = 0.0;  // sqrt(mean(ex^2 + ey^2 + ez^2))
  double iae = 0.0;
  double max_abs = 0.0;
  double effort = 0.0;
  double chattering = 0.0;
  double tde_error_sup = 0.0;  // max |eps_i| over samples with TDE active
};

struct Metrics {
  std::size_t samples = 0;
  bool unstable = false;
  double settling_time = 0.0;  // first t after which |e|_inf stays within settle_band
  double settle_band = 0.0;
  WindowMetrics full;
  WindowMetrics final_half;  // second half of the samples
};

inline constexpr double kDefaultSettleBand = 0.05;

/// Throws std::invalid_argument on an empty log.
Metrics compute_metrics(const SimLog& log, double settle_band = kDefaultSettleBand);

/// Flat, ordered key/value view used by the text report and sweep tables.
std::vector<std::pair<std::string, double>> metric_fields(const Metrics& m);

}  // namespace auvctl
