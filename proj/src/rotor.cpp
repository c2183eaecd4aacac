#include "sta/rotor.hpp"

#include <cmath>
#include <numbers>

#include "sta/errors.hpp"

namespace sta {

using namespace basis;

double rotor_normalization_error(const Multivector& r) {
  return (r * reversion(r) - one).max_abs();
}

Rotor Rotor::from(const Multivector& m, double tol) {
  const double scale = std::max(1.0, m.norm() * m.norm());
  if (!m.is_even(tol * scale)) throw ContractViolation("rotor has odd-grade components");
  const double err = rotor_normalization_error(m);
  if (err > tol * scale) {
    throw ContractViolation("rotor normalization |R rev(R) - 1| = " + std::to_string(err));
  }
  const Multivector v = m * g0 * reversion(m);
  if (v[0b0001] <= 0.0) throw ContractViolation("rotor is not orthochronous");
  return Rotor(m);
}

Rotor Rotor::normalized() const {
  const double n = scalar_part(value_ * reversion(value_));
  return Rotor(value_ / std::sqrt(n));
}

Multivector exp_bivector(const Multivector& bivector) {
  const double scale = std::max(1.0, bivector.norm());
  for (int k : {0, 1, 3, 4}) {
    if (bivector.has_grade(k, 1e-12 * scale)) {
      throw DomainError("exp_bivector: argument is not a pure bivector");
    }
  }
  const Multivector b = grade_projection(bivector, 2);
  const Multivector sq = b * b;
  const double s = scalar_part(sq);
  const double p = pseudoscalar_part(sq);
  const double n2 = b.norm() * b.norm();

  if (std::abs(p) <= 1e-13 * std::max(n2, 1e-300)) {
    const double mag = std::sqrt(std::abs(s));
    if (mag <= 1e-300) return one + b;
    if (s < 0.0) return std::cos(mag) * one + (std::sin(mag) / mag) * b;
    return std::cosh(mag) * one + (std::sinh(mag) / mag) * b;
  }

  // Mixed bivector: scaling and squaring around a truncated Taylor series.
  int squarings = 0;
  Multivector x = b;
  while (x.norm() >= 0.5) {
    x /= 2.0;
    ++squarings;
  }
  Multivector sum = one;
  Multivector term = one;
  for (int k = 1; k <= 16; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

namespace {

// exp(-I s_n a/2) = cos(a/2) - I s_n sin(a/2)
Multivector half_angle(const Multivector& isigma, double a) {
  return std::cos(a / 2) * one - std::sin(a / 2) * isigma;
}

Multivector half_angle_dot(const Multivector& isigma, double a, double a_dot) {
  return (-isigma * half_angle(isigma, a)) * (a_dot / 2);
}

}  // namespace

Rotor euler_rotor(const EulerAngles& angles) {
  return Rotor::unchecked(half_angle(Isigma3, angles.phi) * half_angle(Isigma2, angles.theta) *
                          half_angle(Isigma3, angles.chi));
}

Multivector euler_rotor_derivative(const EulerAngles& angles, const EulerAngles& rates) {
  const Multivector a = half_angle(Isigma3, angles.phi);
  const Multivector b = half_angle(Isigma2, angles.theta);
  const Multivector c = half_angle(Isigma3, angles.chi);
  return half_angle_dot(Isigma3, angles.phi, rates.phi) * b * c +
         a * half_angle_dot(Isigma2, angles.theta, rates.theta) * c +
         a * b * half_angle_dot(Isigma3, angles.chi, rates.chi);
}

namespace {

Multivector relative_vector(const BoostParams& b) {
  return b.b1 * sigma1 + b.b2 * sigma2 + b.b3 * sigma3;
}

}  // namespace

Rotor boost_rotor(const BoostParams& b) {
  const double rapidity = std::sqrt(b.b1 * b.b1 + b.b2 * b.b2 + b.b3 * b.b3);
  if (rapidity == 0.0) return Rotor{};
  return Rotor::unchecked(std::cosh(rapidity / 2) * one -
                          (std::sinh(rapidity / 2) / rapidity) * relative_vector(b));
}

Multivector boost_rotor_derivative(const BoostParams& b, const BoostParams& rate) {
  // L = cosh(r/2) - f(r) (b.sigma) with f(r) = sinh(r/2)/r and g(r) = f'(r)/r.
  const double r2 = b.b1 * b.b1 + b.b2 * b.b2 + b.b3 * b.b3;
  const double r = std::sqrt(r2);
  const double b_dot_rate = b.b1 * rate.b1 + b.b2 * rate.b2 + b.b3 * rate.b3;
  double f = 0.0;
  double g = 0.0;
  if (r < 1e-4) {
    f = 0.5 + r2 / 48.0;
    g = 1.0 / 24.0 + r2 / 960.0;
  } else {
    f = std::sinh(r / 2) / r;
    g = (0.5 * r * std::cosh(r / 2) - std::sinh(r / 2)) / (r2 * r);
  }
  return (0.5 * f * b_dot_rate) * one - (g * b_dot_rate) * relative_vector(b) -
         f * relative_vector(rate);
}

Multivector rotate(const Multivector& c, const Rotor& r) {
  return r.value() * c * reversion(r.value());
}

Multivector rotate(const Multivector& c, const Multivector& r) { return rotate(c, Rotor::from(r)); }

bool is_spatial(const Multivector& r, double tol) {
  const double scale = std::max(1.0, r.norm());
  if (!r.is_even(tol * scale)) return false;
  for (const auto& s : sigma) {
    if (std::abs(scalar_product(r, s)) > tol * scale) return false;
  }
  return std::abs(pseudoscalar_part(r)) <= tol * scale;
}

namespace {

struct BoostFactor {
  Multivector l;
  double norm;  // sqrt(2 (1 + v0))
};

BoostFactor boost_from_velocity(const Multivector& v) {
  const double v0 = v[0b0001];
  if (1.0 + v0 <= 1e-12) {
    throw DecompositionError("split_boost_rotation: v.g0 <= -1, rotor is not orthochronous");
  }
  const double n = std::sqrt(2.0 * (1.0 + v0));
  return {(one + v * g0) / n, n};
}

}  // namespace

BoostRotation split_boost_rotation(const Rotor& r) {
  const Multivector v = rotate(g0, r);
  const BoostFactor lf = boost_from_velocity(v);
  const Rotor l = Rotor::unchecked(lf.l);
  return {l, Rotor::unchecked(reversion(lf.l) * r.value())};
}

BoostRotationRates split_boost_rotation(const Rotor& r, const Multivector& r_dot) {
  const Multivector rr = reversion(r.value());
  const Multivector v = r.value() * g0 * rr;
  const Multivector v_dot = r_dot * g0 * rr + r.value() * g0 * reversion(r_dot);
  const BoostFactor lf = boost_from_velocity(v);
  const double n_dot = v_dot[0b0001] / lf.norm;
  const Multivector l_dot = (v_dot * g0) / lf.norm - lf.l * (n_dot / lf.norm);
  const Multivector u = reversion(lf.l) * r.value();
  const Multivector u_dot = reversion(l_dot) * r.value() + reversion(lf.l) * r_dot;
  return {Rotor::unchecked(lf.l), l_dot, Rotor::unchecked(u), u_dot};
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

namespace {

// U = w + x i + y j + z k with the quaternion units i = -I s1, j = -I s2, k = -I s3.
struct Quat {
  double w, x, y, z;
};

Quat quaternion(const Multivector& u) {
  return {scalar_part(u), scalar_product(u, Isigma1), scalar_product(u, Isigma2),
          scalar_product(u, Isigma3)};
}

EulerRates extract(const Rotor& rotor, const Multivector* u_dot) {
  if (!is_spatial(rotor.value())) {
    throw DomainError("euler_from_spatial: rotor does not fix g0");
  }
  Quat q = quaternion(rotor.value());
  Quat qd{};
  if (u_dot != nullptr) qd = quaternion(*u_dot);
  // Representative with non-negative scalar part (tie: non-negative <-I s3 U>_0).
  const double tie = -q.z;
  if (q.w < -1e-12 || (std::abs(q.w) <= 1e-12 && tie < 0.0)) {
    q = {-q.w, -q.x, -q.y, -q.z};
    qd = {-qd.w, -qd.x, -qd.y, -qd.z};
  }

  const double c = std::hypot(q.w, q.z);
  const double s = std::hypot(q.x, q.y);
  EulerRates out;
  EulerAngles& a = out.extraction.angles;
  EulerAngles& rate = out.rates;
  a.theta = 2.0 * std::atan2(s, c);

  const double half_sum = std::atan2(q.z, q.w);
  const double half_diff = std::atan2(-q.x, q.y);
  const double half_sum_dot = c > 0.0 ? (q.w * qd.z - q.z * qd.w) / (c * c) : 0.0;
  const double half_diff_dot = s > 0.0 ? (q.x * qd.y - q.y * qd.x) / (s * s) : 0.0;

  const double c_dot = c > 1e-12 ? (q.w * qd.w + q.z * qd.z) / c : std::hypot(qd.w, qd.z);
  const double s_dot = s > 1e-12 ? (q.x * qd.x + q.y * qd.y) / s : std::hypot(qd.x, qd.y);
  rate.theta = 2.0 * (c * s_dot - s * c_dot) / (c * c + s * s);

  if (std::abs(std::sin(a.theta)) < kGimbalTolerance) {
    a.phi = 0.0;
    rate.phi = 0.0;
    if (c >= s) {
      a.chi = 2.0 * half_sum;
      rate.chi = 2.0 * half_sum_dot;
    } else {
      a.chi = -2.0 * half_diff;
      rate.chi = -2.0 * half_diff_dot;
    }
  } else {
    a.phi = half_sum + half_diff;
    a.chi = half_sum - half_diff;
    rate.phi = half_sum_dot + half_diff_dot;
    rate.chi = half_sum_dot - half_diff_dot;
  }
  a.phi = wrap_angle(a.phi);
  a.chi = wrap_angle(a.chi);

  const Multivector rebuilt = euler_rotor(a).value();
  out.extraction.sign = scalar_product(rebuilt, reversion(rotor.value())) >= 0.0 ? 1.0 : -1.0;
  return out;
}

}  // namespace

EulerExtraction euler_from_spatial(const Rotor& u) { return extract(u, nullptr).extraction; }

EulerRates euler_rates_from_spatial(const Rotor& u, const Multivector& u_dot) {
  return extract(u, &u_dot);
}

}  // namespace sta
