#pragma once

#include "auvctl/types.hpp"

namespace auvctl {

/// Rigid-body and hydrodynamic coefficients of the 4-DOF vehicle (SI units).
///
/// Hydrodynamic derivatives follow the usual SNAME sign convention: the
/// damping diagonal is d_ii = -X_u - X_|u|u |u| and the inertia diagonal is
/// m - X_udot. Defaults are the reference vehicle values, taken literally
/// (X_u and the quadratic terms are positive, which gives slightly negative
/// damping; see with_corrected_drag()).
struct AuvParams {
  double mass = 54.54;
  double Iz = 13.587;
  double G = 535.0;  // gravity force [N]
  double B = 53.4;   // buoyancy force [N]

  // Added mass.
  double X_udot = -7.6e-3;
  double Y_vdot = -5.5e-2;
  double Z_wdot = -2.4e-1;
  double N_rdot = -3.4e-3;

  // Linear drag.
  double X_u = 2e-3;
  double Y_v = -1e-1;
  double Z_w = -3e-1;
  double N_r = 3e-2;

  // Quadratic drag.
  double X_uu = 2.3e-2;
  double Y_vv = 5.3e-2;
  double Z_ww = 1.7e-1;
  double N_rr = 2.9e-3;

  // Multiplier on the Coriolis-centripetal matrix; 1 for the nominal model.
  double coriolis_scale = 1.0;

  /// Throws std::invalid_argument if mass/inertia/force invariants are violated.
  void validate() const;

  bool operator==(const AuvParams&) const = default;
};

/// Copy of `p` with every drag coefficient forced to the dissipative sign.
AuvParams with_corrected_drag(AuvParams p);

/// Relative perturbations used to build a "true plant" from the nominal one.
struct UncertaintySpec {
  double inertia = 0.0;   // scales m, Iz and added mass
  double coriolis = 0.0;  // scales C(v)
  double damping = 0.0;   // scales all drag coefficients
  double restoring = 0.0; // scales G and B

  bool is_zero() const { return inertia == 0 && coriolis == 0 && damping == 0 && restoring == 0; }
  bool operator==(const UncertaintySpec&) const = default;
};

AuvParams apply_uncertainty(const AuvParams& nominal, const UncertaintySpec& spec);

// Frame-tagged generalized forces. tau (body) and tau_bar = J^-T tau (earth).
struct BodyForce {
  Vec4 value = Vec4::Zero();
};
struct EarthForce {
  Vec4 value = Vec4::Zero();
};

/// Rotation of the horizontal plane by psi, identity on heave and yaw.
Mat4 transform_matrix(double psi);
/// d/dt J(psi) for a yaw rate psi_dot.
Mat4 transform_matrix_rate(double psi, double psi_dot);

BodyForce to_body(const EarthForce& f, double psi);
EarthForce to_earth(const BodyForce& f, double psi);

struct BodyMatrices {
  Diag4 M;
  Mat4 C;
  Diag4 D;
  Vec4 g;
};

struct EarthMatrices {
  Mat4 M;
  Mat4 C;
  Mat4 D;
  Vec4 g;
};

BodyMatrices body_frame_matrices(const AuvParams& p, const Vec4& v);

/// Earth-frame inertia, Coriolis, damping and restoring terms at (eta, eta_dot).
EarthMatrices earth_frame_matrices(const AuvParams& p, const Vec4& eta, const Vec4& eta_dot);

/// Earth-frame inertia only; cheaper than the full set.
Mat4 earth_inertia(const AuvParams& p, double psi);

/// N = C(eta_dot, eta) eta_dot + D(eta_dot, eta) eta_dot + g(eta).
Vec4 nominal_forces(const AuvParams& p, const Vec4& eta, const Vec4& eta_dot);

/// Plant acceleration in the earth frame under force tau_bar and disturbance d.
Vec4 earth_acceleration(const AuvParams& p, const PlantState& x, const EarthForce& tau_bar,
                        const EarthForce& d);

/// Time derivative of the plant state (eta_dot, eta_ddot).
PlantState state_derivative(const AuvParams& p, const PlantState& x, const EarthForce& tau_bar,
                            const EarthForce& d);

}  // namespace auvctl
