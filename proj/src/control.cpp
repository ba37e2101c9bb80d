#include "auvctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace auvctl {

const char* to_string(ControllerKind k) {
  switch (k) {
    case ControllerKind::BsIsmc: return "bs-ismc";
    case ControllerKind::BsIsmcTde: return "bs-ismc-tde";
    case ControllerKind::BsIsmcTdeAdaptive: return "bs-ismc-tde-adaptive";
  }
  return "?";
}

const char* to_string(SwitchingMode m) {
  switch (m) {
    case SwitchingMode::Saturation: return "sat";
    case SwitchingMode::Scaled: return "scaled";
    case SwitchingMode::Sign: return "sgn";
  }
  return "?";
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

TrackingError tracking_error(const Vec4& eta, const Vec4& eta_dot, const Reference& ref) {
  TrackingError out;
  out.e = eta - ref.eta;
  out.e(3) = wrap_angle(out.e(3));
  out.e_dot = eta_dot - ref.eta_dot;
  return out;
}

Vec4 sliding_surface(const Vec4& e, const Vec4& e_dot, const Vec4& error_integral, const Vec4& k1,
                     const Vec4& k2) {
  return e_dot + k1.cwiseProduct(e) + k2.cwiseProduct(error_integral);
}

static double sgn(double x) { return (x > 0) - (x < 0); }

Vec4 saturation(const Vec4& sigma, double phi) {
  return switching_function(sigma, phi, SwitchingMode::Saturation);
}

Vec4 switching_function(const Vec4& sigma, double phi, SwitchingMode mode) {
  Vec4 out;
  for (int i = 0; i < kAxes; ++i) {
    const double s = sigma(i);
    switch (mode) {
      case SwitchingMode::Sign: out(i) = sgn(s); break;
      case SwitchingMode::Saturation: out(i) = std::abs(s) >= phi ? sgn(s) : s; break;
      case SwitchingMode::Scaled: out(i) = std::abs(s) >= phi ? sgn(s) : s / phi; break;
    }
  }
  return out;
}

Vec4 commanded_acceleration(const TrackingError& err, const Vec4& sigma, const Reference& ref,
                            const Gains& gains) {
  const Vec4 sw = switching_function(sigma, gains.phi, gains.switching);
  return -gains.k1.cwiseProduct(err.e_dot) - (Vec4::Ones() + gains.k2).cwiseProduct(err.e) -
         gains.k3.cwiseProduct(sigma) + ref.eta_ddot - gains.Gamma.cwiseProduct(sw);
}

EarthForce bs_ismc_control(const AuvParams& nominal, const Vec4& eta, const Vec4& eta_dot,
                           const TrackingError& err, const Vec4& sigma, const Reference& ref,
                           const Gains& gains) {
  const EarthMatrices m = earth_frame_matrices(nominal, eta, eta_dot);
  // M(eta) * (-f) = C eta_dot + D eta_dot + g
  const Vec4 minus_Mf = m.C * eta_dot + m.D * eta_dot + m.g;
  return {minus_Mf + m.M * commanded_acceleration(err, sigma, ref, gains)};
}

DelayBuffer::DelayBuffer(int delay_steps) : n_(delay_steps) {
  if (delay_steps < 1) throw std::invalid_argument("TDE delay must be at least one step");
  data_.resize(2 * static_cast<std::size_t>(delay_steps));
}

void DelayBuffer::push(const DelayedSample& s) {
  data_[head_] = s;
  head_ = (head_ + 1) % data_.size();
  count_ = std::min(count_ + 1, data_.size());
}

const DelayedSample& DelayBuffer::steps_back(int steps) const {
  if (steps < 1 || static_cast<std::size_t>(steps) > count_) {
    throw std::out_of_range("delay buffer does not hold a sample " + std::to_string(steps) +
                            " steps back");
  }
  const std::size_t cap = data_.size();
  return data_[(head_ + cap - static_cast<std::size_t>(steps)) % cap];
}

TdeEstimate tde_estimate(const DelayBuffer& buf, const Vec4& eta_now, const Vec4& mbar, double delay) {
  TdeEstimate out;
  if (!buf.ready()) return out;
  const int n = buf.delay_steps();
  const DelayedSample& s1 = buf.steps_back(n);
  const DelayedSample& s2 = buf.steps_back(2 * n);
  out.accel_delayed = (eta_now - 2.0 * s1.eta + s2.eta) / (delay * delay);
  out.p_tilde = s1.tau_bar - s1.N - mbar.cwiseProduct(out.accel_delayed);
  out.warmup = false;
  return out;
}

EarthForce bs_ismc_tde_control(const Vec4& N_now, const TrackingError& err, const Vec4& sigma,
                               const Reference& ref, const Gains& gains, const Vec4& mbar,
                               const TdeEstimate& tde) {
  return {N_now + mbar.cwiseProduct(commanded_acceleration(err, sigma, ref, gains)) + tde.p_tilde};
}

Vec4 adaptive_mbar_step(const Vec4& mbar, const Vec4& sigma, const Vec4& Gamma, const Vec4& alpha,
                        double Ts, double mbar_min, bool abs_sigma) {
  Vec4 out;
  for (int i = 0; i < kAxes; ++i) {
    const double s2 = abs_sigma ? std::abs(sigma(i)) : sigma(i);
    const double rate = Gamma(i) * std::abs(sigma(i)) - alpha(i) * s2 / (mbar(i) * mbar(i));
    out(i) = std::max(mbar(i) + Ts * rate, mbar_min);
  }
  return out;
}

LemmaResult lemma_condition(const Mat4& M_eta, const Vec4& mbar) {
  const Mat4 R = Mat4::Identity() - M_eta.lu().solve(mbar.asDiagonal().toDenseMatrix());
  Eigen::JacobiSVD<Mat4> svd(R);
  LemmaResult out;
  out.norm = svd.singularValues()(0);
  out.satisfied = out.norm < 1.0;
  return out;
}

int delay_steps(double delay, double Ts) {
  if (!(Ts > 0)) throw std::invalid_argument("Ts must be > 0");
  const double ratio = delay / Ts;
  const double n = std::round(ratio);
  if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, n)) {
    throw std::invalid_argument("L must be integer multiple of Ts");
  }
  return static_cast<int>(n);
}

Controller::Controller(ControllerKind kind, const AuvParams& nominal, const Gains& gains,
                       const TdeConfig& tde, double Ts)
    : kind_(kind),
      nominal_(nominal),
      gains_(gains),
      tde_(tde),
      update_interval_(kind == ControllerKind::BsIsmc ? 1 : delay_steps(tde.delay, Ts)),
      period_(update_interval_ * Ts),
      mbar_(tde.mbar0.cwiseMax(tde.mbar_min)),
      buffer_(delay_steps(tde.delay, Ts)) {}

ControlOutput Controller::step(const Reference& ref, const PlantState& x) {
  ControlOutput out;
  out.err = tracking_error(x.eta, x.eta_dot, ref);

  // Trapezoidal integral of e, clamped against windup.
  if (has_last_e_) {
    integral_ += 0.5 * period_ * (last_e_ + out.err.e);
    integral_ = integral_.cwiseMax(-gains_.integral_clamp).cwiseMin(gains_.integral_clamp);
  }
  last_e_ = out.err.e;
  has_last_e_ = true;

  out.sigma = sliding_surface(out.err.e, out.err.e_dot, integral_, gains_.k1, gains_.k2);
  out.N = nominal_forces(nominal_, x.eta, x.eta_dot);
  out.mbar = mbar_;

  if (kind_ == ControllerKind::BsIsmc) {
    out.tau_bar = bs_ismc_control(nominal_, x.eta, x.eta_dot, out.err, out.sigma, ref, gains_);
    return out;
  }

  out.tde = tde_estimate(buffer_, x.eta, mbar_, tde_.delay);
  out.tau_bar = bs_ismc_tde_control(out.N, out.err, out.sigma, ref, gains_, mbar_, out.tde);

  if (kind_ == ControllerKind::BsIsmcTdeAdaptive) {
    mbar_ = adaptive_mbar_step(mbar_, out.sigma, gains_.Gamma, tde_.alpha, period_, tde_.mbar_min,
                               tde_.abs_sigma);
  }
  return out;
}

void Controller::commit(const PlantState& x, const EarthForce& applied) {
  if (kind_ == ControllerKind::BsIsmc) return;
  buffer_.push({x.eta, applied.value, nominal_forces(nominal_, x.eta, x.eta_dot)});
}

}  // namespace auvctl
