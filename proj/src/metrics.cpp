#include "auvctl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace auvctl {

namespace {

WindowMetrics window_metrics(const std::vector<SimRecord>& recs, std::size_t begin, std::size_t end,
                             double Ts) {
  WindowMetrics w;
  const std::size_t n = end - begin;
  if (n == 0) return w;

  std::array<double, kAxes> sq{};
  double pos_sq = 0.0;
  for (std::size_t k = begin; k < end; ++k) {
    const SimRecord& r = recs[k];
    for (int i = 0; i < kAxes; ++i) {
      AxisMetrics& a = w.axis[i];
      const double e = std::abs(r.e(i));
      sq[i] += e * e;
      a.iae += e * Ts;
      a.max_abs = std::max(a.max_abs, e);
      a.effort += std::abs(r.tau_bar(i)) * Ts;
      if (k > begin) a.chattering += std::abs(r.tau_bar(i) - recs[k - 1].tau_bar(i));
      if (!r.tde_warmup) w.tde_error_sup = std::max(w.tde_error_sup, std::abs(r.eps(i)));
    }
    pos_sq += r.e.head<3>().squaredNorm();
  }

  double all_sq = 0.0;
  for (int i = 0; i < kAxes; ++i) {
    AxisMetrics& a = w.axis[i];
    a.rmse = std::sqrt(sq[i] / static_cast<double>(n));
    all_sq += sq[i];
    w.iae += a.iae;
    w.max_abs = std::max(w.max_abs, a.max_abs);
    w.effort += a.effort;
    w.chattering += a.chattering;
  }
  w.rmse = std::sqrt(all_sq / (kAxes * static_cast<double>(n)));
  w.position_rmse = std::sqrt(pos_sq / static_cast<double>(n));
  return w;
}

}  // namespace

Metrics compute_metrics(const SimLog& log, double settle_band) {
  const auto& recs = log.records;
  if (recs.empty()) throw std::invalid_argument("cannot compute metrics of an empty log");

  Metrics m;
  m.samples = recs.size();
  m.unstable = log.unstable;
  m.settle_band = settle_band;
  m.full = window_metrics(recs, 0, recs.size(), log.Ts);
  m.final_half = window_metrics(recs, recs.size() / 2, recs.size(), log.Ts);

  // Scan backwards for the last excursion outside the band.
  m.settling_time = 0.0;
  for (std::size_t k = recs.size(); k-- > 0;) {
    if (recs[k].e.cwiseAbs().maxCoeff() > settle_band) {
      m.settling_time = (k + 1 < recs.size()) ? recs[k + 1].t : recs[k].t + log.Ts;
      break;
    }
  }
  return m;
}

std::vector<std::pair<std::string, double>> metric_fields(const Metrics& m) {
  std::vector<std::pair<std::string, double>> out;
  out.emplace_back("samples", static_cast<double>(m.samples));
  out.emplace_back("unstable", m.unstable ? 1.0 : 0.0);
  out.emplace_back("settling_time", m.settling_time);
  out.emplace_back("settle_band", m.settle_band);
  auto window = [&](const std::string& prefix, const WindowMetrics& w) {
    out.emplace_back(prefix + ".rmse", w.rmse);
    out.emplace_back(prefix + ".position_rmse", w.position_rmse);
    out.emplace_back(prefix + ".iae", w.iae);
    out.emplace_back(prefix + ".max_abs_error", w.max_abs);
    out.emplace_back(prefix + ".effort", w.effort);
    out.emplace_back(prefix + ".chattering", w.chattering);
    out.emplace_back(prefix + ".tde_error_sup", w.tde_error_sup);
    for (int i = 0; i < kAxes; ++i) {
      const std::string ax = std::string(".") + kAxisNames[i];
      out.emplace_back(prefix + ".rmse" + ax, w.axis[i].rmse);
      out.emplace_back(prefix + ".iae" + ax, w.axis[i].iae);
      out.emplace_back(prefix + ".max_abs_error" + ax, w.axis[i].max_abs);
      out.emplace_back(prefix + ".effort" + ax, w.axis[i].effort);
      out.emplace_back(prefix + ".chattering" + ax, w.axis[i].chattering);
    }
  };
  window("full", m.full);
  window("final", m.final_half);
  return out;
}

}  // namespace auvctl
