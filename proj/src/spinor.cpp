#include "sta/spinor.hpp"

#include <cmath>
#include <numbers>

#include "sta/errors.hpp"

namespace sta {

using namespace basis;

Spinor::Spinor(const Multivector& value) : value_(value) {
  if (!value.is_even()) throw DomainError("spinor must be an even multivector");
}

namespace {

// e^{I a} = cos a + I sin a
Multivector pseudoscalar_phase(double a) { return std::cos(a) * one + std::sin(a) * I; }

}  // namespace

SpinorPolar polar_decompose(const Spinor& spinor) {
  const Multivector& psi = spinor.value();
  const Multivector p = psi * reversion(psi);
  const double a = scalar_part(p);
  const double b = pseudoscalar_part(p);
  const double rho = std::hypot(a, b);
  if (rho <= kDensityEpsilon) {
    throw DegenerateSpinorError("polar_decompose: density " + std::to_string(rho) +
                                " below threshold");
  }
  Multivector rest = p;
  rest[0] = 0.0;
  rest[0b1111] = 0.0;
  if (rest.max_abs() > 1e-9 * rho) {
    throw NotDiracSpinorError("polar_decompose: psi rev(psi) has non scalar/pseudoscalar parts");
  }
  double beta = std::atan2(b, a);
  if (beta <= -std::numbers::pi) beta = std::numbers::pi;
  const Multivector r = pseudoscalar_phase(-beta / 2) * psi / std::sqrt(rho);
  return {rho, beta, Rotor::unchecked(r)};
}

Spinor compose(const SpinorPolar& p) {
  return Spinor(std::sqrt(p.rho) * pseudoscalar_phase(p.beta / 2) * p.rotor.value());
}

Multivector velocity(const Rotor& r) { return rotate(g0, r); }

Multivector spin_vector(const Rotor& r) { return 0.5 * rotate(g3, r); }

Multivector spin_bivector(const Rotor& r) { return 0.5 * rotate(Isigma3, r); }

Multivector finite_difference_rotor(const RotorCurve& curve, double t, double h) {
  if (!(h > 0.0)) throw RangeError("finite_difference_rotor: step must be positive");
  if (t - h < curve.t_min || t + h > curve.t_max) {
    throw RangeError("finite_difference_rotor: [t-h, t+h] leaves the curve's domain");
  }
  return (curve.value(t + h) - curve.value(t - h)) / (2.0 * h);
}

Multivector angular_velocity(const RotorCurve& curve, double t) {
  const Multivector r = curve.value(t);
  if (curve.derivative) return 2.0 * curve.derivative(t) * reversion(r);

  const double h = std::min({1e-3, t - curve.t_min, curve.t_max - t});
  if (!(h > 0.0)) throw RangeError("angular_velocity: no room for a central difference");
  const Multivector d1 = finite_difference_rotor(curve, t, h);
  const Multivector d2 = finite_difference_rotor(curve, t, h / 2);
  const Multivector d4 = finite_difference_rotor(curve, t, h / 4);
  const double diff1 = (d1 - d2).max_abs();
  const double diff2 = (d2 - d4).max_abs();
  if (diff1 > 1e-8 * (1.0 + d2.max_abs()) && diff2 > 0.5 * diff1) {
    throw NumericalDerivativeError("angular_velocity: central differences do not converge");
  }
  const Multivector d = (4.0 * d4 - d2) / 3.0;
  return 2.0 * d * reversion(r);
}

namespace {

void fill_observables(Kinematics& k) {
  const Multivector r = k.rotor.value();
  const Multivector rr = reversion(r);
  k.v = r * g0 * rr;
  k.s = 0.5 * (r * g3 * rr);
  k.S = 0.5 * (r * Isigma3 * rr);
  k.S_dot = 0.5 * (k.rotor_dot * Isigma3 * rr + r * Isigma3 * reversion(k.rotor_dot));
  k.v0 = k.v[0b0001];
  k.s0 = k.s[0b0001];
  k.v_rel = grade_projection(k.v * g0, 2);
  k.s_rel = grade_projection(k.s * g0, 2);
  k.varrho = k.rho * k.v0;
  k.omega0_full = 2.0 * k.rotor_dot * rr;
  k.omega0_path = 2.0 * k.path_rotor_dot * reversion(k.path_rotor.value());
}

}  // namespace

Kinematics kinematics_from_frame(const FrameSample& f) {
  if (!(f.rho > kDensityEpsilon)) throw DegenerateSpinorError("kinematics: density below threshold");
  Kinematics k;
  k.rho = f.rho;
  k.rho_dot = f.rho_dot;
  k.beta = f.beta;
  k.beta_dot = f.beta_dot;
  k.chi = f.angles.chi;
  k.chi_dot = f.angle_rates.chi;

  const Multivector l = boost_rotor(f.boost).value();
  const Multivector l_dot = boost_rotor_derivative(f.boost, f.boost_rate);
  const EulerAngles path{f.angles.phi, f.angles.theta, 0.0};
  const EulerAngles path_rates{f.angle_rates.phi, f.angle_rates.theta, 0.0};
  const Multivector u0 = euler_rotor(path).value();
  const Multivector u0_dot = euler_rotor_derivative(path, path_rates);
  const Multivector u = euler_rotor(f.angles).value();
  const Multivector u_dot = euler_rotor_derivative(f.angles, f.angle_rates);

  k.path_rotor = Rotor::unchecked(l * u0);
  k.path_rotor_dot = l_dot * u0 + l * u0_dot;
  k.rotor = Rotor::unchecked(l * u);
  k.rotor_dot = l_dot * u + l * u_dot;
  fill_observables(k);
  return k;
}

SpinorSample spinor_from_frame(const FrameSample& f) {
  const Multivector l = boost_rotor(f.boost).value();
  const Multivector l_dot = boost_rotor_derivative(f.boost, f.boost_rate);
  const Multivector r = l * euler_rotor(f.angles).value();
  const Multivector r_dot = l_dot * euler_rotor(f.angles).value() +
                            l * euler_rotor_derivative(f.angles, f.angle_rates);
  const double root = std::sqrt(f.rho);
  const Multivector e = pseudoscalar_phase(f.beta / 2);
  const Multivector e_dot = (I * e) * (f.beta_dot / 2);
  const double root_dot = f.rho > 0.0 ? f.rho_dot / (2.0 * root) : 0.0;
  return {root * e * r, root_dot * e * r + root * e_dot * r + root * e * r_dot};
}

Kinematics kinematics_from_spinor(const Multivector& psi, const Multivector& psi_dot) {
  const SpinorPolar polar = polar_decompose(Spinor(psi));
  Kinematics k;
  k.rho = polar.rho;
  k.beta = polar.beta;

  const Multivector p = psi * reversion(psi);
  const Multivector p_dot = psi_dot * reversion(psi) + psi * reversion(psi_dot);
  const double a = scalar_part(p);
  const double b = pseudoscalar_part(p);
  const double a_dot = scalar_part(p_dot);
  const double b_dot = pseudoscalar_part(p_dot);
  k.rho_dot = (a * a_dot + b * b_dot) / k.rho;
  k.beta_dot = (a * b_dot - b * a_dot) / (k.rho * k.rho);

  // psi = sqrt(rho) e^{I beta/2} R  =>  dR = e^{-I beta/2} (dpsi - (rho'/2rho + I beta'/2) psi) / sqrt(rho)
  const Multivector growth = (k.rho_dot / (2.0 * k.rho)) * one + (k.beta_dot / 2.0) * I;
  k.rotor = polar.rotor;
  k.rotor_dot = pseudoscalar_phase(-k.beta / 2) * (psi_dot - growth * psi) / std::sqrt(k.rho);

  const BoostRotationRates split = split_boost_rotation(k.rotor, k.rotor_dot);
  const EulerRates euler = euler_rates_from_spatial(split.rotation, split.rotation_dot);
  const EulerAngles& ang = euler.extraction.angles;
  const EulerAngles path{ang.phi, ang.theta, 0.0};
  const EulerAngles path_rates{euler.rates.phi, euler.rates.theta, 0.0};
  const double sign = euler.extraction.sign;
  const Multivector& l = split.boost.value();
  const Multivector u0 = euler_rotor(path).value();
  k.path_rotor = Rotor::unchecked(sign * (l * u0));
  k.path_rotor_dot = sign * (split.boost_dot * u0 + l * euler_rotor_derivative(path, path_rates));
  k.chi = ang.chi;
  k.chi_dot = euler.rates.chi;
  fill_observables(k);
  return k;
}

double beta_rate_central(const Trajectory& curve, double t, double h) {
  const double plus = polar_decompose(Spinor(curve.psi(t + h))).beta;
  const double minus = polar_decompose(Spinor(curve.psi(t - h))).beta;
  return wrap_angle(plus - minus) / (2.0 * h);
}

Kinematics kinematics_at(const Trajectory& curve, double t) {
  if (auto f = curve.frame(t)) return kinematics_from_frame(*f);
  const Multivector psi = curve.psi(t);
  if (auto d = curve.psi_dot(t)) return kinematics_from_spinor(psi, *d);

  const double h = 1e-5 * std::max(1.0, curve.duration());
  const Multivector d = (curve.psi(t + h) - curve.psi(t - h)) / (2.0 * h);
  Kinematics k = kinematics_from_spinor(psi, d);
  k.beta_dot = beta_rate_central(curve, t, h);
  return k;
}

}  // namespace sta
