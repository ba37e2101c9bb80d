#include "auvctl/simulation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "auvctl/integrator.hpp"

namespace auvctl {

int Scenario::delay_steps() const { return auvctl::delay_steps(tde.delay, Ts); }

std::size_t Scenario::sample_count() const {
  return static_cast<std::size_t>(std::floor(duration / Ts + 1e-9)) + 1;
}

AuvParams Scenario::nominal_params() const { return corrected_drag ? with_corrected_drag(params) : params; }

AuvParams Scenario::true_params() const { return apply_uncertainty(nominal_params(), uncertainty); }

std::vector<std::string> Scenario::violations() const {
  std::vector<std::string> v;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  check(duration > 0 && std::isfinite(duration), "duration must be > 0");
  check(Ts > 0 && std::isfinite(Ts), "Ts must be > 0");
  if (Ts > 0) {
    try {
      (void)delay_steps();
    } catch (const std::invalid_argument& e) {
      v.emplace_back(e.what());
    }
  }
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    v.emplace_back(e.what());
  }
  for (double s : {uncertainty.inertia, uncertainty.coriolis, uncertainty.damping, uncertainty.restoring}) {
    if (!(s > -1.0 && s < 1.0)) {
      v.emplace_back("uncertainty scales must lie in (-1, 1)");
      break;
    }
  }
  check((gains.k1.array() > 0).all(), "k1 entries must be > 0");
  check((gains.k2.array() > 0).all(), "k2 entries must be > 0");
  check((gains.k3.array() > 0).all(), "k3 entries must be > 0");
  check((gains.Gamma.array() > 0).all(), "Gamma entries must be > 0");
  check(gains.phi > 0, "phi must be > 0");
  check(gains.integral_clamp > 0, "integral_clamp must be > 0");
  check(tde.mbar_min > 0, "Mbar_min must be > 0");
  check((tde.mbar0.array() >= tde.mbar_min).all(), "Mbar entries must be >= Mbar_min");
  check((tde.alpha.array() > 0).all(), "alpha entries must be > 0");
  check((disturbance.noise.array() >= 0).all(), "disturbance noise must be >= 0");
  check(initial.all_finite(), "initial state must be finite");
  check(divergence_limit > 0, "divergence_limit must be > 0");
  return v;
}

void Scenario::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid scenario:";
  for (const auto& m : v) os << "\n  - " << m;
  throw std::invalid_argument(os.str());
}

Scenario case1_scenario() { return Scenario{}; }

Scenario case2_scenario() {
  Scenario s;
  s.name = "case2";
  s.duration = 200.0;
  s.Ts = 2e-3;
  s.initial = {Vec4(0.0, 1.5, 0.0, std::numbers::pi / 4), Vec4::Zero()};
  s.controller = ControllerKind::BsIsmcTdeAdaptive;
  s.tde.delay = 2e-3;
  s.tde.mbar0 = Vec4(0.03, 0.03, 0.05, 0.02);
  s.trajectory = case2_trajectory();
  return s;
}

SimLog run_scenario(const Scenario& sc) {
  sc.validate();
  const AuvParams nominal = sc.nominal_params();
  const AuvParams plant = sc.true_params();
  const std::size_t steps = sc.sample_count();
  const bool uses_tde = sc.controller != ControllerKind::BsIsmc;

  Controller ctrl(sc.controller, nominal, sc.gains, sc.tde, sc.Ts);

  SimLog log;
  log.scenario_name = sc.name;
  log.Ts = sc.Ts;
  log.records.reserve(steps);

  PlantState x = sc.initial;
  ControlOutput u;
  Vec4 eps = Vec4::Zero();
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * sc.Ts;
    const Reference ref = reference_at(sc.trajectory, t);
    const EarthForce d{disturbance_at(sc.disturbance, t)};
    const bool update = k % static_cast<std::size_t>(ctrl.update_interval()) == 0;
    if (update) {
      u = ctrl.step(ref, x);
      eps.setZero();
      if (uses_tde && !u.tde.warmup) {
        // Perturbation seen through the Mbar model at time t, from the true acceleration.
        const Vec4 accel = earth_acceleration(plant, x, u.tau_bar, d);
        const Vec4 p = u.tau_bar.value - u.N - u.mbar.cwiseProduct(accel);
        eps = p - u.tde.p_tilde;
      }
    }

    SimRecord r;
    r.t = t;
    r.eta = x.eta;
    r.eta_dot = x.eta_dot;
    r.eta_d = ref.eta;
    r.e = update ? u.err.e : tracking_error(x.eta, x.eta_dot, ref).e;
    r.sigma = u.sigma;
    r.tau_bar = u.tau_bar.value;
    r.tau = to_body(u.tau_bar, x.eta(3)).value;
    r.p_tilde = u.tde.p_tilde;
    r.eps = eps;
    r.mbar = u.mbar;
    r.d = d.value;
    r.error_integral = ctrl.error_integral();
    r.tde_warmup = uses_tde ? u.tde.warmup : true;
    r.lemma_norm = lemma_condition(earth_inertia(plant, x.eta(3)), u.mbar).norm;
    log.records.push_back(r);
    ctrl.commit(x, u.tau_bar);

    if (k + 1 == steps) break;
    auto f = [&](const PlantState& s) { return state_derivative(plant, s, u.tau_bar, d); };
    x = rk4_step(f, x, sc.Ts);
    if (!x.all_finite() || x.eta_dot.norm() > sc.divergence_limit) {
      log.unstable = true;
      std::ostringstream os;
      os << "diverged at t=" << (static_cast<double>(k + 1) * sc.Ts) << " s (|eta_dot|="
         << x.eta_dot.norm() << ")";
      log.diagnostic = os.str();
      break;
    }
  }
  return log;
}

}  // namespace auvctl
