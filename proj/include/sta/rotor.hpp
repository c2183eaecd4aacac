#pragma once

// Lorentz rotors: even multivectors with R rev(R) = 1 acting by R c rev(R).
// Spatial rotations are parameterised by Euler angles,
//   U = exp(-I s3 phi/2) exp(-I s2 theta/2) exp(-I s3 chi/2),
// and pure boosts by a rapidity vector, L = exp(-(b . sigma)/2).

#include "sta/multivector.hpp"

namespace sta {

inline constexpr double kRotorTolerance = 1e-10;
inline constexpr double kGimbalTolerance = 1e-9;

struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double chi = 0.0;
};

struct BoostParams {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;

  BoostParams operator-() const { return {-b1, -b2, -b3}; }
};

class Rotor {
 public:
  Rotor() : value_(1.0) {}

  // Validates evenness, R rev(R) = 1 and orthochronicity; throws ContractViolation.
  static Rotor from(const Multivector& m, double tol = kRotorTolerance);
  // No checks. For values that are rotors by construction.
  static Rotor unchecked(const Multivector& m) { return Rotor(m); }

  const Multivector& value() const noexcept { return value_; }
  Rotor reverse() const { return Rotor(reversion(value_)); }
  // R / sqrt(<R rev(R)>_0); removes drift accumulated by integration.
  Rotor normalized() const;

  friend Rotor operator*(const Rotor& a, const Rotor& b) { return Rotor(a.value_ * b.value_); }
  friend Multivector operator*(const Rotor& a, const Multivector& b) { return a.value_ * b; }
  friend Multivector operator*(const Multivector& a, const Rotor& b) { return a * b.value_; }

 private:
  explicit Rotor(const Multivector& m) : value_(m) {}
  Multivector value_;
};

// Largest |coefficient| of R rev(R) - 1.
double rotor_normalization_error(const Multivector& r);

// exp(B) for a pure bivector B. Throws DomainError for any other grade.
Multivector exp_bivector(const Multivector& bivector);

Rotor euler_rotor(const EulerAngles& angles);
// d/dt euler_rotor(angles(t)) given the angle rates.
Multivector euler_rotor_derivative(const EulerAngles& angles, const EulerAngles& rates);

Rotor boost_rotor(const BoostParams& b);
Multivector boost_rotor_derivative(const BoostParams& b, const BoostParams& rate);

Multivector rotate(const Multivector& c, const Rotor& r);
// As above for a raw multivector; throws ContractViolation unless r is a rotor.
Multivector rotate(const Multivector& c, const Multivector& r);

// A spatial rotor commutes with g0, i.e. has no sigma_n and no I components.
bool is_spatial(const Multivector& r, double tol = kGimbalTolerance);

struct BoostRotation {
  Rotor boost;
  Rotor rotation;
};

// R = L U with L = (1 + v g0) / sqrt(2 (1 + v.g0)), v = R g0 rev(R).
// Throws DecompositionError when 1 + v.g0 is not positive.
BoostRotation split_boost_rotation(const Rotor& r);

struct BoostRotationRates {
  Rotor boost;
  Multivector boost_dot;
  Rotor rotation;
  Multivector rotation_dot;
};

BoostRotationRates split_boost_rotation(const Rotor& r, const Multivector& r_dot);

struct EulerExtraction {
  EulerAngles angles;
  // euler_rotor(angles) == sign * U
  double sign = 1.0;
};

// theta in [0, pi], phi and chi in (-pi, pi]. When |sin theta| < 1e-9 the
// azimuth is folded into chi and phi is set to 0. Throws DomainError if U
// does not fix g0.
EulerExtraction euler_from_spatial(const Rotor& u);

struct EulerRates {
  EulerExtraction extraction;
  EulerAngles rates;
};

// Angles plus their time derivatives along a spatial rotor curve U(t).
EulerRates euler_rates_from_spatial(const Rotor& u, const Multivector& u_dot);

// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace sta
