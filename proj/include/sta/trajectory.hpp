#pragma once

// Spinor curves psi(t) and spacetime spinor fields psi(x).

#include <array>
#include <functional>
#include <optional>

#include "sta/multivector.hpp"
#include "sta/rotor.hpp"

namespace sta {

// Polar/Euler coordinates of psi = (rho e^{I beta})^{1/2} L U0(phi, theta) e^{-I s3 chi/2}
// together with their time derivatives.
struct FrameSample {
  double rho = 1.0;
  double rho_dot = 0.0;
  double beta = 0.0;
  double beta_dot = 0.0;
  BoostParams boost;
  BoostParams boost_rate;
  EulerAngles angles;
  EulerAngles angle_rates;
};

// psi and d psi/dt rebuilt from frame coordinates.
struct SpinorSample {
  Multivector psi;
  Multivector psi_dot;
};

SpinorSample spinor_from_frame(const FrameSample& f);

// Immutable spinor curve parameterised by observer time t in [0, duration].
class Trajectory {
 public:
  virtual ~Trajectory() = default;

  virtual double duration() const = 0;
  virtual Multivector psi(double t) const = 0;
  // Analytic time derivative, when the curve provides one.
  virtual std::optional<Multivector> psi_dot(double /*t*/) const { return std::nullopt; }
  // Frame coordinates, when the curve is defined through them.
  virtual std::optional<FrameSample> frame(double /*t*/) const { return std::nullopt; }
};

// Trajectory built from plain function objects; psi_dot may be empty.
class FunctionTrajectory final : public Trajectory {
 public:
  using Curve = std::function<Multivector(double)>;

  FunctionTrajectory(double duration, Curve psi, Curve psi_dot = {})
      : duration_(duration), psi_(std::move(psi)), psi_dot_(std::move(psi_dot)) {}

  double duration() const override { return duration_; }
  Multivector psi(double t) const override { return psi_(t); }
  std::optional<Multivector> psi_dot(double t) const override {
    if (!psi_dot_) return std::nullopt;
    return psi_dot_(t);
  }

 private:
  double duration_;
  Curve psi_;
  Curve psi_dot_;
};

// Rotor curve with optional analytic derivative, defined on [t_min, t_max].
struct RotorCurve {
  std::function<Multivector(double)> value;
  std::function<Multivector(double)> derivative;
  double t_min = 0.0;
  double t_max = 0.0;
};

// Spacetime point (x^0, x^1, x^2, x^3) = (t, x, y, z).
using SpacetimePoint = std::array<double, 4>;

// Closed-form spinor field with analytic partial derivatives d/dx^mu.
class SpinorField {
 public:
  virtual ~SpinorField() = default;
  virtual Multivector value(const SpacetimePoint& x) const = 0;
  virtual Multivector partial(int mu, const SpacetimePoint& x) const = 0;
};

}  // namespace sta
