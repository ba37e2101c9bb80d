#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "auvctl/control.hpp"
#include "auvctl/types.hpp"

namespace auvctl {

enum class Waveform { Sin, Cos };

/// amplitude * wave(omega t + phase)
struct SinusoidTerm {
  double amplitude = 0.0;
  double omega = 0.0;  // rad/s
  double phase = 0.0;  // rad
  Waveform wave = Waveform::Sin;

  bool operator==(const SinusoidTerm&) const = default;
};

/// Sum of sinusoids plus ramp * t plus offset; derivatives are analytic.
struct AxisSignal {
  std::vector<SinusoidTerm> terms;
  double ramp = 0.0;
  double offset = 0.0;

  double value(double t) const;
  double rate(double t) const;
  double accel(double t) const;

  bool operator==(const AxisSignal&) const = default;
};

struct TrajectorySpec {
  std::array<AxisSignal, kAxes> axes;
  bool operator==(const TrajectorySpec&) const = default;
};

struct DisturbanceSpec {
  std::array<AxisSignal, kAxes> axes;
  Vec4 noise = Vec4::Zero();  // half-width of zero-mean uniform noise per axis
  std::uint64_t seed = 0;

  bool operator==(const DisturbanceSpec&) const = default;
};

Reference reference_at(const TrajectorySpec& spec, double t);

/// Earth-frame disturbance force. Pure in (spec, t): the noise sample is a
/// hash of (seed, axis, t), so repeated evaluation gives identical output.
Vec4 disturbance_at(const DisturbanceSpec& spec, double t);

TrajectorySpec case1_trajectory();
TrajectorySpec case2_trajectory();
/// Default disturbance: A sin(w t) per axis with
/// A = [2, 2, 2, 0.5], w = [0.1, 0.13, 0.09, 0.11].
DisturbanceSpec default_disturbance();

}  // namespace auvctl
