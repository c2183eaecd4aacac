#pragma once

// Closed-form spinor trajectories built from frame coordinates
// (rho, beta, boost, phi, theta, chi) given as finite polynomial/trig series,
// so every derivative is exact.

#include <array>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sta/errors.hpp"
#include "sta/trajectory.hpp"

namespace sta {

// poly[0] + poly[1] t + ... + sum a sin(f t) + sum a cos(f t)
struct Series {
  std::vector<double> poly;
  std::vector<std::array<double, 2>> sin;  // {amplitude, frequency}
  std::vector<std::array<double, 2>> cos;

  static Series constant(double c) { return {{c}, {}, {}}; }
  static Series linear(double c0, double c1) { return {{c0, c1}, {}, {}}; }

  double value(double t) const;
  double rate(double t) const;
};

struct EulerSeries {
  Series rho = Series::constant(1.0);
  Series beta;
  Series phi;
  Series theta;
  Series chi;
  Series b1;
  Series b2;
  Series b3;
};

class EulerTrajectory final : public Trajectory {
 public:
  EulerTrajectory(EulerSeries series, double duration);

  double duration() const override { return duration_; }
  Multivector psi(double t) const override;
  std::optional<Multivector> psi_dot(double t) const override;
  std::optional<FrameSample> frame(double t) const override;

  const EulerSeries& series() const noexcept { return series_; }

 private:
  EulerSeries series_;
  double duration_;
};

enum class Particle { electron, positron };
enum class Traversal { linear, quadratic };

struct RestPlaneWave {
  double mass = 1.0;
  Particle particle = Particle::electron;
  double charge = 0.0;
};

struct BoostedPlaneWave {
  double mass = 1.0;
  Particle particle = Particle::electron;
  BoostParams boost;
  double charge = 0.0;
};

struct PrecessionLoop {
  double theta0 = 0.0;
  double omega = 0.0;  // 0 selects 2 pi / duration
  Traversal traversal = Traversal::linear;
  double chi_rate = 0.0;
};

// Boost of rapidity b along sigma_3 applied to a precession loop.
struct BoostedPrecession {
  double rapidity = 0.0;
  double theta0 = 0.0;
  double omega = 0.0;
  double chi_rate = 0.0;
};

struct BetaRamp {
  double beta_rate = 0.0;
  double rapidity = 1.0;
  double theta0 = 1.0471975511965976;
  double omega = 1.0;
};

struct CustomEuler {
  EulerSeries series;
};

using ScenarioParams =
    std::variant<RestPlaneWave, BoostedPlaneWave, PrecessionLoop, BoostedPrecession, BetaRamp, CustomEuler>;

struct ScenarioSpec {
  ScenarioParams params;
  double duration = 1.0;
  int steps = 10000;
};

std::string kind_name(const ScenarioParams& p);

// Throws ScenarioError when a type invariant fails.
void validate(const ScenarioSpec& spec);

// Frame-coordinate series of a built-in scenario.
EulerSeries euler_series(const ScenarioSpec& spec);

std::unique_ptr<EulerTrajectory> make_trajectory(const ScenarioSpec& spec);

// Input error in a scenario definition. field() is a JSON-pointer-like path,
// line() is set for syntax errors (0 otherwise).
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& what, std::string field, int line = 0)
      : Error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

ScenarioSpec parse_scenario(const std::string& text);
ScenarioSpec load_scenario(const std::string& path);
// Canonical JSON text of a scenario (used as the report echo).
std::string scenario_to_json(const ScenarioSpec& spec);

// psi(x) = L base(v.x) with v = L g0 rev(L):
//   electron base(tau) = exp(-I s3 w tau), positron base(tau) = I exp(+I s3 w tau).
// w = mass gives an exact free solution; any other frequency is off shell.
class PlaneWaveField final : public SpinorField {
 public:
  PlaneWaveField(double mass, Particle particle, const BoostParams& boost = {});
  PlaneWaveField(double mass, Particle particle, const BoostParams& boost, double frequency);

  Multivector value(const SpacetimePoint& x) const override;
  Multivector partial(int mu, const SpacetimePoint& x) const override;

  double mass() const noexcept { return mass_; }

 private:
  double proper_time(const SpacetimePoint& x) const;
  Multivector base(double tau) const;

  double mass_;
  double frequency_;
  Particle particle_;
  Multivector boost_;
  std::array<double, 4> v_lower_{};
};

}  // namespace sta
