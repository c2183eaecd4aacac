#pragma once

// Dirac spinors in polar form psi = (rho e^{I beta})^{1/2} R and the local
// observables they carry.

#include "sta/multivector.hpp"
#include "sta/rotor.hpp"
#include "sta/trajectory.hpp"

namespace sta {

// Below this density the rotor of a spinor is numerically meaningless.
inline constexpr double kDensityEpsilon = 1e-12;

// Even multivector (8 real degrees of freedom).
class Spinor {
 public:
  Spinor() = default;
  // Throws DomainError for odd-grade input.
  explicit Spinor(const Multivector& value);

  const Multivector& value() const noexcept { return value_; }

 private:
  Multivector value_;
};

struct SpinorPolar {
  double rho = 0.0;
  double beta = 0.0;  // (-pi, pi]
  Rotor rotor;
};

// Throws DegenerateSpinorError when rho <= kDensityEpsilon and
// NotDiracSpinorError when psi rev(psi) has components besides 1 and I.
SpinorPolar polar_decompose(const Spinor& psi);
Spinor compose(const SpinorPolar& p);

Multivector velocity(const Rotor& r);       // R g0 rev(R)
Multivector spin_vector(const Rotor& r);    // R g3 rev(R) / 2
Multivector spin_bivector(const Rotor& r);  // R I s3 rev(R) / 2

// 2 dR/dt rev(R). Uses the analytic derivative when the curve has one, else
// Richardson-extrapolated central differences; throws NumericalDerivativeError
// when successive differences do not agree.
Multivector angular_velocity(const RotorCurve& curve, double t);

// (R(t+h) - R(t-h)) / 2h. Throws RangeError when [t-h, t+h] leaves the curve's domain.
Multivector finite_difference_rotor(const RotorCurve& curve, double t, double h);

struct Kinematics {
  double rho = 0.0;
  double rho_dot = 0.0;
  double beta = 0.0;
  double beta_dot = 0.0;
  Rotor rotor;             // R
  Multivector rotor_dot;   // dR/dt
  Rotor path_rotor;        // R0 = L U0
  Multivector path_rotor_dot;
  double chi = 0.0;
  double chi_dot = 0.0;

  Multivector v;          // proper velocity
  Multivector s;          // spin vector
  Multivector S;          // spin bivector
  Multivector S_dot;
  double varrho = 0.0;    // observer-frame density rho v0
  double v0 = 0.0;
  double s0 = 0.0;
  Multivector v_rel;      // relative velocity: v g0 = v0 + v_rel
  Multivector s_rel;      // s g0 = s0 + s_rel
  Multivector omega0_full;  // 2 dR/dt rev(R)
  Multivector omega0_path;  // 2 dR0/dt rev(R0)
};

// Analytic route through frame coordinates supplied by the trajectory.
Kinematics kinematics_from_frame(const FrameSample& f);
// Extraction route: polar decomposition, boost/rotation split and Euler
// extraction of psi, differentiated exactly through d psi/dt.
Kinematics kinematics_from_spinor(const Multivector& psi, const Multivector& psi_dot);
// Frame route if available, extraction route otherwise (with central
// differences and an unwrapped beta difference when psi_dot is missing).
Kinematics kinematics_at(const Trajectory& curve, double t);

// Unwrapped central difference of the chiral angle.
double beta_rate_central(const Trajectory& curve, double t, double h);

}  // namespace sta
