#pragma once

#include <Eigen/Dense>

namespace auvctl {

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Diag4 = Eigen::DiagonalMatrix<double, 4>;

// Plant state: pose eta = [x y z psi] and its earth-frame rate.
struct PlantState {
  Vec4 eta = Vec4::Zero();
  Vec4 eta_dot = Vec4::Zero();

  PlantState& operator+=(const PlantState& o) {
    eta += o.eta;
    eta_dot += o.eta_dot;
    return *this;
  }
  bool all_finite() const { return eta.allFinite() && eta_dot.allFinite(); }
  bool operator==(const PlantState&) const = default;
};

inline PlantState operator+(PlantState a, const PlantState& b) { return a += b; }
inline PlantState operator*(double s, const PlantState& a) { return {s * a.eta, s * a.eta_dot}; }

// Axis order used everywhere: surge/x, sway/y, heave/z, yaw/psi.
inline constexpr int kAxes = 4;
inline constexpr const char* kAxisNames[kAxes] = {"x", "y", "z", "psi"};

}  // namespace auvctl
