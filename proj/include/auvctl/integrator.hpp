#pragma once

#include <concepts>

namespace auvctl {

// State types usable by rk4_step: closed under + and scalar * on the left.
template <class S>
concept OdeState = requires(S a, S b, double h) {
  { a + b } -> std::convertible_to<S>;
  { h * a } -> std::convertible_to<S>;
};

/// Classical fourth-order Runge-Kutta step of x' = f(x) over h. Inputs held
/// by the caller over the step (zero-order hold) are captured inside f.
template <OdeState S, class F>
  requires std::invocable<F&, const S&>
S rk4_step(F&& f, const S& x, double h) {
  const S k1 = f(x);
  const S k2 = f(x + (0.5 * h) * k1);
  const S k3 = f(x + (0.5 * h) * k2);
  const S k4 = f(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace auvctl
