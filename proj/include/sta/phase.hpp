#pragma once

// Local and global dynamic/geometric phases of a spinor trajectory.
//
// Full rates (frame dependent, observer g0):
//   d delta/dt =  -Omega0.S - (v/v0).[dS/dt - (s/v0) dbeta/dt]
//   d gamma/dt =   omega0.S + (v/v0).[dS/dt - (s/v0) dbeta/dt]
// Simple rates:
//   d delta^/dt = -Omega0.S = -<dR/dt I s3 rev(R)>
//   d gamma^/dt =  omega0.S = <dR0/dt I s3 rev(R0)>
// Both pairs sum to -dchi/dt / 2; the total phase is -chi/2.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sta/spinor.hpp"
#include "sta/trajectory.hpp"

namespace sta {

struct RateBreakdown {
  double omega_term = 0.0;
  double relativistic_correction = 0.0;
  double total = 0.0;
};

// Throws NonOrthochronousError when v0 <= 0.
RateBreakdown dynamic_rate_full(const Kinematics& k, const Multivector& S_dot);
RateBreakdown geometric_rate_full(const Kinematics& k, const Multivector& S_dot);

double dynamic_rate_simple(const Kinematics& k);
double geometric_rate_simple(const Kinematics& k);

// Rotor forms: -<dR I s3 rev(R)> and <dR0 I s3 rev(R0)>.
double rotor_dynamic_rate(const Rotor& r, const Multivector& r_dot);
double rotor_geometric_rate(const Rotor& r0, const Multivector& r0_dot);

// -<dpsi I s3 g0 rev(psi) g0> = varrho d delta/dt = Im(Psi^dagger dPsi).
double hermitian_dynamic_density(const Spinor& psi, const Multivector& psi_dot);

// alpha with psi2 = psi1 exp(I s3 alpha); throws NotCorayError otherwise.
double ray_phase_difference(const Spinor& psi1, const Spinor& psi2);

// Rates and frame data at one time.
struct RateSample {
  double t = 0.0;
  double delta_dot = 0.0;
  double gamma_dot = 0.0;
  double delta_hat_dot = 0.0;
  double gamma_hat_dot = 0.0;
  double beta = 0.0;
  double v0 = 1.0;
  double chi = 0.0;
  double chi_dot = 0.0;
};

RateSample rate_sample(const Trajectory& traj, double t);

struct PhaseState {
  double t = 0.0;
  double delta_L = 0.0;
  double gamma_L = 0.0;
  double delta_hat = 0.0;
  double gamma_hat = 0.0;
  double chi = 0.0;  // unwrapped
  double chi0 = 0.0;
};

enum class Formula { full, simple, both };

std::string formula_name(Formula f);

struct PhaseOptions {
  int steps = 10000;
  Formula formula = Formula::both;
  // Report rates per proper time (scaled by v0 = dt/dtau). Integrals are unchanged.
  bool proper_time = false;
  bool parallel = true;
};

struct PhaseRow {
  double t = 0.0;
  std::optional<double> delta_dot;
  std::optional<double> gamma_dot;
  std::optional<double> delta_hat_dot;
  std::optional<double> gamma_hat_dot;
  double beta = 0.0;
  double v0 = 1.0;
  double consistency_residual = 0.0;
};

struct PhaseFinals {
  std::optional<double> delta_G;
  std::optional<double> gamma_G;
  std::optional<double> delta_hat_G;
  std::optional<double> gamma_hat_G;
  double total = 0.0;  // -(chi(T) - chi(0)) / 2
};

struct PhaseReport {
  std::string scenario;  // echo, filled by the caller
  PhaseOptions options;
  std::vector<PhaseRow> series;
  std::vector<PhaseState> states;
  PhaseFinals finals;
  Rotor final_rotor;
  double max_consistency_residual = 0.0;
};

// Fixed-step RK4 over [0, duration]. The rates depend on t only, so each step
// is Simpson's rule on the node and midpoint samples. Throws IntegrationError
// carrying the failing time.
PhaseReport integrate_phases(const Trajectory& traj, const PhaseOptions& options = {});

// Composite trapezoid rule on sampled data.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);

// psi'(t) = psi(t) exp(-I s3 delta(t)) with delta given at nodes together with
// its rate and interpolated by cubic Hermite polynomials.
class PhaseRemovedTrajectory final : public Trajectory {
 public:
  PhaseRemovedTrajectory(std::shared_ptr<const Trajectory> base, std::vector<double> t, std::vector<double> delta,
                         std::vector<double> delta_dot);

  double duration() const override { return base_->duration(); }
  Multivector psi(double t) const override;
  std::optional<Multivector> psi_dot(double t) const override;

  double delta(double t) const;
  double delta_rate(double t) const;

 private:
  std::size_t segment(double t) const;

  std::shared_ptr<const Trajectory> base_;
  std::vector<double> t_;
  std::vector<double> delta_;
  std::vector<double> delta_dot_;
};

// Removes the full local dynamic phase integrated on `steps` RK4 steps.
std::unique_ptr<PhaseRemovedTrajectory> remove_dynamic_phase(std::shared_ptr<const Trajectory> base, int steps);

struct AdiabaticRates {
  double standard_rate = 0.0;   // -Im(Phi^dagger dPhi) / varrho
  double gamma_hat_rate = 0.0;  // omega0.S
  double half_chi_dot = 0.0;
  double offset_residual = 0.0;  // standard - gamma_hat - half_chi_dot
};

AdiabaticRates adiabatic_standard_geometric_rate(const Trajectory& eigencurve, double t);

}  // namespace sta
