#pragma once

#include <string>
#include <vector>

#include "auvctl/scenario.hpp"

namespace auvctl {

struct SimRecord {
  double t = 0.0;
  Vec4 eta = Vec4::Zero(), eta_dot = Vec4::Zero(), eta_d = Vec4::Zero();
  Vec4 e = Vec4::Zero(), sigma = Vec4::Zero();
  Vec4 tau_bar = Vec4::Zero();  // earth frame, as commanded
  Vec4 tau = Vec4::Zero();      // body frame, J^T tau_bar
  Vec4 p_tilde = Vec4::Zero();  // TDE estimate (zero for the model-based law and during warmup)
  Vec4 eps = Vec4::Zero();      // TDE error p - p_tilde (zero when TDE is inactive)
  Vec4 mbar = Vec4::Zero();
  double lemma_norm = 0.0;
  Vec4 d = Vec4::Zero();        // applied disturbance (earth frame)
  Vec4 error_integral = Vec4::Zero();
  bool tde_warmup = true;
};

struct SimLog {
  std::string scenario_name;
  double Ts = 0.0;
  std::vector<SimRecord> records;
  bool unstable = false;  // divergence or non-finite state
  std::string diagnostic;
};

/// Closed-loop fixed-step simulation at rate 1/Ts with zero-order hold on the
/// control and disturbance. The controller uses the nominal parameters; the
/// plant integrates the uncertainty-perturbed ones. Deterministic.
SimLog run_scenario(const Scenario& sc);

}  // namespace auvctl
