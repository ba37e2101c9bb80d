#pragma once

#include <vector>

#include "auvctl/types.hpp"
#include "auvctl/vehicle_model.hpp"

namespace auvctl {

enum class ControllerKind { BsIsmc, BsIsmcTde, BsIsmcTdeAdaptive };

// How the reaching term replaces sgn(sigma).
//  Saturation: sgn outside |sigma| >= phi, sigma itself inside (literal, discontinuous at phi).
//  Scaled:     sigma/phi inside the layer (continuous).
//  Sign:       pure sgn, for chattering comparisons.
enum class SwitchingMode { Saturation, Scaled, Sign };

const char* to_string(ControllerKind k);
const char* to_string(SwitchingMode m);

struct Gains {
  Vec4 k1 = Vec4::Constant(0.1);
  Vec4 k2 = Vec4::Constant(0.1);
  Vec4 k3 = Vec4::Constant(10.0);
  Vec4 Gamma = Vec4::Constant(1.0);
  double phi = 0.2;
  SwitchingMode switching = SwitchingMode::Saturation;
  double integral_clamp = 10.0;

  bool operator==(const Gains&) const = default;
};

struct TdeConfig {
  double delay = 7e-3;  // L [s], an integer multiple of the step
  Vec4 mbar0 = Vec4(3.0, 3.0, 6.0, 1.0);
  Vec4 alpha = Vec4::Constant(0.01);
  double mbar_min = 1e-3;
  bool abs_sigma = false;  // use |sigma_i| in the second adaptation term

  bool operator==(const TdeConfig&) const = default;
};

struct Reference {
  Vec4 eta = Vec4::Zero();
  Vec4 eta_dot = Vec4::Zero();
  Vec4 eta_ddot = Vec4::Zero();
};

struct TrackingError {
  Vec4 e = Vec4::Zero();
  Vec4 e_dot = Vec4::Zero();
};

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

TrackingError tracking_error(const Vec4& eta, const Vec4& eta_dot, const Reference& ref);

/// sigma = e_dot + k1 e + k2 * integral(e).
Vec4 sliding_surface(const Vec4& e, const Vec4& e_dot, const Vec4& error_integral, const Vec4& k1,
                     const Vec4& k2);

/// Componentwise: sgn(sigma_i) when |sigma_i| >= phi, sigma_i otherwise.
Vec4 saturation(const Vec4& sigma, double phi);

Vec4 switching_function(const Vec4& sigma, double phi, SwitchingMode mode);

/// Bracketed term shared by both laws:
/// -k1 e_dot - (I + k2) e - k3 sigma + eta_ddot_d - Gamma sw(sigma).
Vec4 commanded_acceleration(const TrackingError& err, const Vec4& sigma, const Reference& ref,
                            const Gains& gains);

/// Model-based law tau_bar = M(eta) [-f + commanded_acceleration] using nominal params.
EarthForce bs_ismc_control(const AuvParams& nominal, const Vec4& eta, const Vec4& eta_dot,
                           const TrackingError& err, const Vec4& sigma, const Reference& ref,
                           const Gains& gains);

struct DelayedSample {
  Vec4 eta = Vec4::Zero();
  Vec4 tau_bar = Vec4::Zero();
  Vec4 N = Vec4::Zero();
};

/// Fixed-capacity history of the last 2n per-step samples.
class DelayBuffer {
 public:
  explicit DelayBuffer(int delay_steps);

  void push(const DelayedSample& s);
  /// True once 2n samples are held, i.e. eta(t - 2L) exists.
  bool ready() const { return count_ >= data_.size(); }
  int delay_steps() const { return n_; }
  std::size_t size() const { return count_; }
  /// Sample pushed `steps` pushes ago; steps_back(1) is the most recent.
  const DelayedSample& steps_back(int steps) const;

 private:
  int n_;
  std::vector<DelayedSample> data_;
  std::size_t head_ = 0;  // next write slot
  std::size_t count_ = 0;
};

struct TdeEstimate {
  Vec4 p_tilde = Vec4::Zero();
  Vec4 accel_delayed = Vec4::Zero();  // eta_ddot(t - L) from the second difference
  bool warmup = true;
};

/// p_tilde = tau_bar(t-L) - N(t-L) - Mbar eta_ddot(t-L), with
/// eta_ddot(t-L) = (eta(t) - 2 eta(t-L) + eta(t-2L)) / L^2.
/// Returns warmup = true and p_tilde = 0 until the buffer holds 2n samples.
TdeEstimate tde_estimate(const DelayBuffer& buf, const Vec4& eta_now, const Vec4& mbar, double delay);

/// tau_bar = N + Mbar commanded_acceleration + p_tilde. Algebraically the
/// delayed-input form tau(t-L) + Mbar[... - eta_ddot(t-L)] + N - N(t-L);
/// during warmup p_tilde = 0 and this is the model-free fallback.
EarthForce bs_ismc_tde_control(const Vec4& N_now, const TrackingError& err, const Vec4& sigma,
                               const Reference& ref, const Gains& gains, const Vec4& mbar,
                               const TdeEstimate& tde);

/// One explicit-Euler step of dMbar_ii/dt = Gamma_ii |sigma_i| - alpha_i sigma_i / Mbar_ii^2,
/// floored at mbar_min.
Vec4 adaptive_mbar_step(const Vec4& mbar, const Vec4& sigma, const Vec4& Gamma, const Vec4& alpha,
                        double Ts, double mbar_min, bool abs_sigma = false);

struct LemmaResult {
  double norm = 0.0;
  bool satisfied = true;
};

/// Spectral norm of I - M(eta)^-1 Mbar and whether it is below 1.
LemmaResult lemma_condition(const Mat4& M_eta, const Vec4& mbar);

struct ControlOutput {
  TrackingError err;
  Vec4 sigma = Vec4::Zero();
  EarthForce tau_bar;
  Vec4 N = Vec4::Zero();
  Vec4 mbar = Vec4::Zero();  // value used for this step
  TdeEstimate tde;
};

/// Controller with its internal state (error integral, Mbar, delay buffer).
///
/// The plant is sampled every Ts and the delay buffer stores one sample per
/// Ts. The TDE laws update their output once per delay L = n Ts and hold it in
/// between, so tau_bar(t - L) is always the previous update; the model-based
/// law updates every Ts. One instance per simulation: call step() on update
/// steps and commit() on every step.
class Controller {
 public:
  Controller(ControllerKind kind, const AuvParams& nominal, const Gains& gains, const TdeConfig& tde,
             double Ts);

  /// Plant steps between control updates (n for the TDE laws, 1 otherwise).
  int update_interval() const { return update_interval_; }

  ControlOutput step(const Reference& ref, const PlantState& x);
  /// Records the plant sample and the force applied over it.
  void commit(const PlantState& x, const EarthForce& applied);

  ControllerKind kind() const { return kind_; }
  const Vec4& error_integral() const { return integral_; }
  const Vec4& mbar() const { return mbar_; }
  const DelayBuffer& buffer() const { return buffer_; }

 private:
  ControllerKind kind_;
  AuvParams nominal_;
  Gains gains_;
  TdeConfig tde_;
  int update_interval_;
  double period_;  // update_interval * Ts
  Vec4 integral_ = Vec4::Zero();
  Vec4 last_e_ = Vec4::Zero();
  bool has_last_e_ = false;
  Vec4 mbar_;
  DelayBuffer buffer_;
};

/// Number of steps in the TDE delay; throws if delay is not an integer multiple of Ts.
int delay_steps(double delay, double Ts);

}  // namespace auvctl
