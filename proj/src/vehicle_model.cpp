#include "auvctl/vehicle_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace auvctl {

void AuvParams::validate() const {
  std::string err;
  if (!(mass > 0)) err += "mass must be > 0; ";
  if (!(Iz > 0)) err += "Iz must be > 0; ";
  if (!(G >= 0)) err += "G must be >= 0; ";
  if (!(B >= 0)) err += "B must be >= 0; ";
  if (!(mass - X_udot > 0)) err += "m - X_udot must be > 0; ";
  if (!(mass - Y_vdot > 0)) err += "m - Y_vdot must be > 0; ";
  if (!(mass - Z_wdot > 0)) err += "m - Z_wdot must be > 0; ";
  if (!(Iz - N_rdot > 0)) err += "Iz - N_rdot must be > 0; ";
  if (!std::isfinite(coriolis_scale)) err += "coriolis_scale must be finite; ";
  if (!err.empty()) throw std::invalid_argument("invalid AUV parameters: " + err);
}

AuvParams with_corrected_drag(AuvParams p) {
  for (double* c : {&p.X_u, &p.Y_v, &p.Z_w, &p.N_r, &p.X_uu, &p.Y_vv, &p.Z_ww, &p.N_rr}) {
    *c = -std::abs(*c);
  }
  return p;
}

AuvParams apply_uncertainty(const AuvParams& nominal, const UncertaintySpec& spec) {
  for (double s : {spec.inertia, spec.coriolis, spec.damping, spec.restoring}) {
    if (!(s > -1.0 && s < 1.0)) {
      throw std::invalid_argument("uncertainty scale must lie in (-1, 1), got " + std::to_string(s));
    }
  }
  if (spec.is_zero()) return nominal;

  AuvParams p = nominal;
  const double kM = 1.0 + spec.inertia;
  p.mass *= kM;
  p.Iz *= kM;
  p.X_udot *= kM;
  p.Y_vdot *= kM;
  p.Z_wdot *= kM;
  p.N_rdot *= kM;

  p.coriolis_scale *= 1.0 + spec.coriolis;

  const double kD = 1.0 + spec.damping;
  for (double* c : {&p.X_u, &p.Y_v, &p.Z_w, &p.N_r, &p.X_uu, &p.Y_vv, &p.Z_ww, &p.N_rr}) *c *= kD;

  const double kG = 1.0 + spec.restoring;
  p.G *= kG;
  p.B *= kG;
  return p;
}

Mat4 transform_matrix(double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  Mat4 J = Mat4::Identity();
  J(0, 0) = c;
  J(0, 1) = -s;
  J(1, 0) = s;
  J(1, 1) = c;
  return J;
}

Mat4 transform_matrix_rate(double psi, double psi_dot) {
  const double c = std::cos(psi), s = std::sin(psi);
  Mat4 Jd = Mat4::Zero();
  Jd(0, 0) = -s * psi_dot;
  Jd(0, 1) = -c * psi_dot;
  Jd(1, 0) = c * psi_dot;
  Jd(1, 1) = -s * psi_dot;
  return Jd;
}

// J is orthogonal: J^-T = J and J^-1 = J^T.
BodyForce to_body(const EarthForce& f, double psi) { return {transform_matrix(psi).transpose() * f.value}; }
EarthForce to_earth(const BodyForce& f, double psi) { return {transform_matrix(psi) * f.value}; }

BodyMatrices body_frame_matrices(const AuvParams& p, const Vec4& v) {
  const double m11 = p.mass - p.X_udot;
  const double m22 = p.mass - p.Y_vdot;
  const double m33 = p.mass - p.Z_wdot;
  const double m44 = p.Iz - p.N_rdot;

  BodyMatrices out;
  out.M = Diag4(m11, m22, m33, m44);

  const double cs = p.coriolis_scale;
  out.C = Mat4::Zero();
  out.C(0, 3) = -cs * m22 * v(1);
  out.C(1, 3) = cs * m11 * v(0);
  out.C(3, 0) = cs * m22 * v(1);
  out.C(3, 1) = -cs * m11 * v(0);

  out.D = Diag4(-p.X_u - p.X_uu * std::abs(v(0)), -p.Y_v - p.Y_vv * std::abs(v(1)),
                -p.Z_w - p.Z_ww * std::abs(v(2)), -p.N_r - p.N_rr * std::abs(v(3)));

  out.g = Vec4(0.0, 0.0, -(p.G - p.B), 0.0);
  return out;
}

EarthMatrices earth_frame_matrices(const AuvParams& p, const Vec4& eta, const Vec4& eta_dot) {
  const double psi = eta(3);
  const Mat4 J = transform_matrix(psi);
  const Mat4 Jt = J.transpose();
  const Mat4 Jd = transform_matrix_rate(psi, eta_dot(3));
  const Vec4 v = Jt * eta_dot;
  const BodyMatrices body = body_frame_matrices(p, v);
  const Mat4 M = body.M.toDenseMatrix();

  EarthMatrices out;
  out.M = J * M * Jt;
  out.C = J * (body.C - M * Jt * Jd) * Jt;
  out.D = J * body.D.toDenseMatrix() * Jt;
  out.g = J * body.g;
  return out;
}

Mat4 earth_inertia(const AuvParams& p, double psi) {
  const Mat4 J = transform_matrix(psi);
  const Diag4 M(p.mass - p.X_udot, p.mass - p.Y_vdot, p.mass - p.Z_wdot, p.Iz - p.N_rdot);
  return J * M * J.transpose();
}

Vec4 nominal_forces(const AuvParams& p, const Vec4& eta, const Vec4& eta_dot) {
  const EarthMatrices e = earth_frame_matrices(p, eta, eta_dot);
  return e.C * eta_dot + e.D * eta_dot + e.g;
}

Vec4 earth_acceleration(const AuvParams& p, const PlantState& x, const EarthForce& tau_bar,
                        const EarthForce& d) {
  const EarthMatrices e = earth_frame_matrices(p, x.eta, x.eta_dot);
  const Vec4 rhs = tau_bar.value + d.value - e.C * x.eta_dot - e.D * x.eta_dot - e.g;
  return e.M.llt().solve(rhs);
}

PlantState state_derivative(const AuvParams& p, const PlantState& x, const EarthForce& tau_bar,
                            const EarthForce& d) {
  return {x.eta_dot, earth_acceleration(p, x, tau_bar, d)};
}

}  // namespace auvctl
