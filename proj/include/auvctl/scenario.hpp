#pragma once

#include <string>

#include "auvctl/control.hpp"
#include "auvctl/trajectory.hpp"
#include "auvctl/vehicle_model.hpp"

namespace auvctl {

/// Everything needed to reproduce one closed-loop run.
struct Scenario {
  std::string name = "case1";
  double duration = 300.0;  // s
  double Ts = 7e-3;         // s
  PlantState initial{Vec4(0.0, 1.0, 2.0, 0.7853981633974483), Vec4::Zero()};

  AuvParams params;  // nominal model seen by the controller
  bool corrected_drag = false;
  UncertaintySpec uncertainty;  // true plant = apply_uncertainty(params, uncertainty)

  ControllerKind controller = ControllerKind::BsIsmcTde;
  Gains gains;
  TdeConfig tde;

  TrajectorySpec trajectory = case1_trajectory();
  DisturbanceSpec disturbance = default_disturbance();

  double divergence_limit = 1e3;  // abort when |eta_dot| exceeds this

  /// Delay multiple n with L = n Ts.
  int delay_steps() const;
  /// Number of samples in the log: floor(duration / Ts) + 1.
  std::size_t sample_count() const;
  /// Nominal model after the optional drag sign correction.
  AuvParams nominal_params() const;
  AuvParams true_params() const;

  /// Every violated invariant, empty when valid.
  std::vector<std::string> violations() const;
  /// Throws std::invalid_argument listing all violations.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

/// Case study 1: sinusoidal reference, x0 = [0, 1, 2, pi/4], Ts = L = 7 ms, Mbar = diag(3,3,6,1).
Scenario case1_scenario();
/// Case study 2: ramp/sinusoid reference, x0 = [0, 1.5, 0, pi/4], Ts = L = 2 ms,
/// adaptive Mbar starting at diag(0.03, 0.03, 0.05, 0.02).
Scenario case2_scenario();

}  // namespace auvctl
