#include "auvctl/trajectory.hpp"

#include <bit>
#include <cmath>

namespace auvctl {

namespace {

double wave(Waveform w, double arg) { return w == Waveform::Sin ? std::sin(arg) : std::cos(arg); }
// d/darg of wave
double wave_d1(Waveform w, double arg) { return w == Waveform::Sin ? std::cos(arg) : -std::sin(arg); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [-1, 1) from 53 random bits.
double hashed_uniform(std::uint64_t seed, int axis, double t) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(axis));
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(t));
  return 2.0 * (static_cast<double>(h >> 11) * 0x1.0p-53) - 1.0;
}

AxisSignal sines(std::initializer_list<SinusoidTerm> terms, double ramp = 0.0, double offset = 0.0) {
  return {std::vector<SinusoidTerm>(terms), ramp, offset};
}

}  // namespace

double AxisSignal::value(double t) const {
  double v = offset + ramp * t;
  for (const auto& s : terms) v += s.amplitude * wave(s.wave, s.omega * t + s.phase);
  return v;
}

double AxisSignal::rate(double t) const {
  double v = ramp;
  for (const auto& s : terms) v += s.amplitude * s.omega * wave_d1(s.wave, s.omega * t + s.phase);
  return v;
}

double AxisSignal::accel(double t) const {
  double v = 0.0;
  for (const auto& s : terms) v -= s.amplitude * s.omega * s.omega * wave(s.wave, s.omega * t + s.phase);
  return v;
}

Reference reference_at(const TrajectorySpec& spec, double t) {
  Reference r;
  for (int i = 0; i < kAxes; ++i) {
    r.eta(i) = spec.axes[i].value(t);
    r.eta_dot(i) = spec.axes[i].rate(t);
    r.eta_ddot(i) = spec.axes[i].accel(t);
  }
  return r;
}

Vec4 disturbance_at(const DisturbanceSpec& spec, double t) {
  Vec4 d;
  for (int i = 0; i < kAxes; ++i) {
    d(i) = spec.axes[i].value(t);
    if (spec.noise(i) != 0.0) d(i) += spec.noise(i) * hashed_uniform(spec.seed, i, t);
  }
  return d;
}

TrajectorySpec case1_trajectory() {
  using W = Waveform;
  TrajectorySpec s;
  s.axes[0] = sines({{4.0, 0.04, 0.0, W::Sin}});
  s.axes[1] = sines({{2.5, 0.02, 0.0, W::Cos}});
  s.axes[2] = sines({{2.0, 0.01, 0.0, W::Sin}, {2.0, 0.02, 0.0, W::Cos}});
  s.axes[3] = sines({{0.5, 0.01, 0.0, W::Cos}, {-0.5, 0.01, 0.0, W::Sin}});
  return s;
}

TrajectorySpec case2_trajectory() {
  using W = Waveform;
  TrajectorySpec s;
  s.axes[0] = sines({{3.0, 0.04, 0.0, W::Sin}});
  s.axes[1] = sines({{1.5, 0.04, 0.0, W::Cos}});
  s.axes[2] = sines({}, 0.02);
  s.axes[3] = sines({}, 0.04);
  return s;
}

DisturbanceSpec default_disturbance() {
  using W = Waveform;
  DisturbanceSpec d;
  d.axes[0] = sines({{2.0, 0.10, 0.0, W::Sin}});
  d.axes[1] = sines({{2.0, 0.13, 0.0, W::Sin}});
  d.axes[2] = sines({{2.0, 0.09, 0.0, W::Sin}});
  d.axes[3] = sines({{0.5, 0.11, 0.0, W::Sin}});
  return d;
}

}  // namespace auvctl
