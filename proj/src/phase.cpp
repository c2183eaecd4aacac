#include "sta/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sta/errors.hpp"
#include "sta/kernels.hpp"

namespace sta {

using namespace basis;

namespace {

double correction(const Kinematics& k, const Multivector& S_dot) {
  if (!(k.v0 > 0.0)) throw NonOrthochronousError("phase rate: v0 must be positive");
  return -scalar_product(k.v_rel, S_dot) / k.v0 + scalar_product(k.v_rel, k.s_rel) * k.beta_dot / (k.v0 * k.v0);
}

}  // namespace

RateBreakdown dynamic_rate_full(const Kinematics& k, const Multivector& S_dot) {
  const double omega = -scalar_product(k.omega0_full, k.S);
  const double corr = correction(k, S_dot);
  return {omega, corr, omega + corr};
}

RateBreakdown geometric_rate_full(const Kinematics& k, const Multivector& S_dot) {
  const double omega = scalar_product(k.omega0_path, k.S);
  const double corr = -correction(k, S_dot);
  return {omega, corr, omega + corr};
}

double dynamic_rate_simple(const Kinematics& k) { return -scalar_product(k.omega0_full, k.S); }

double geometric_rate_simple(const Kinematics& k) { return scalar_product(k.omega0_path, k.S); }

double rotor_dynamic_rate(const Rotor& r, const Multivector& r_dot) {
  return -scalar_part(r_dot * Isigma3 * reversion(r.value()));
}

double rotor_geometric_rate(const Rotor& r0, const Multivector& r0_dot) {
  return scalar_part(r0_dot * Isigma3 * reversion(r0.value()));
}

double hermitian_dynamic_density(const Spinor& psi, const Multivector& psi_dot) {
  return -scalar_part(psi_dot * Isigma3 * hermitian_adjoint(psi.value()));
}

double ray_phase_difference(const Spinor& psi1, const Spinor& psi2) {
  const SpinorPolar p1 = polar_decompose(psi1);
  polar_decompose(psi2);
  // rev(psi1) psi1 = rho e^{I beta}, so e^{-I beta} rev(psi1) psi2 / rho = e^{I s3 alpha}
  const Multivector unphase = std::cos(p1.beta) * one - std::sin(p1.beta) * I;
  const Multivector y = unphase * reversion(psi1.value()) * psi2.value() / p1.rho;
  const double alpha = std::atan2(-scalar_product(y, Isigma3), scalar_part(y));
  const Multivector fit = std::cos(alpha) * one + std::sin(alpha) * Isigma3;
  const double residual = (y - fit).max_abs();
  if (residual > 1e-9) {
    throw NotCorayError("ray_phase_difference: spinors are not on the same ray", residual);
  }
  return alpha;
}

RateSample rate_sample(const Trajectory& traj, double t) {
  const Kinematics k = kinematics_at(traj, t);
  RateSample r;
  r.t = t;
  r.delta_dot = dynamic_rate_full(k, k.S_dot).total;
  r.gamma_dot = geometric_rate_full(k, k.S_dot).total;
  r.delta_hat_dot = dynamic_rate_simple(k);
  r.gamma_hat_dot = geometric_rate_simple(k);
  r.beta = k.beta;
  r.v0 = k.v0;
  r.chi = k.chi;
  r.chi_dot = k.chi_dot;
  return r;
}

std::string formula_name(Formula f) {
  switch (f) {
    case Formula::full:
      return "full";
    case Formula::simple:
      return "simple";
    case Formula::both:
      return "both";
  }
  return "both";
}

PhaseReport integrate_phases(const Trajectory& traj, const PhaseOptions& options) {
  const int n = options.steps;
  const double T = traj.duration();
  if (n < 2) throw DomainError("integrate_phases: steps must be at least 2");
  if (!(T > 0.0)) throw DomainError("integrate_phases: duration must be positive");

  std::vector<double> times(2 * static_cast<std::size_t>(n) + 1);
  for (std::size_t j = 0; j < times.size(); ++j) times[j] = T * static_cast<double>(j) / (2.0 * n);
  times.back() = T;
  std::vector<RateSample> s = options.parallel ? kernels::sample_rates_parallel(traj, times)
                                               : kernels::sample_rates_serial(traj, times);

  for (std::size_t j = 1; j < s.size(); ++j) {
    const double jump = s[j].chi - s[j - 1].chi;
    s[j].chi -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
  }

  const bool full = options.formula != Formula::simple;
  const bool simple = options.formula != Formula::full;
  const double h = T / n;

  PhaseReport report;
  report.options = options;
  report.states.reserve(n + 1);
  report.series.reserve(n + 1);

  PhaseState state;
  state.chi0 = s[0].chi;
  for (int i = 0; i <= n; ++i) {
    const RateSample& node = s[2 * static_cast<std::size_t>(i)];
    if (i > 0) {
      const RateSample& a = s[2 * static_cast<std::size_t>(i) - 2];
      const RateSample& m = s[2 * static_cast<std::size_t>(i) - 1];
      const auto step = [&](double RateSample::*f) { return h / 6.0 * (a.*f + 4.0 * m.*f + node.*f); };
      state.delta_L += step(&RateSample::delta_dot);
      state.gamma_L += step(&RateSample::gamma_dot);
      state.delta_hat += step(&RateSample::delta_hat_dot);
      state.gamma_hat += step(&RateSample::gamma_hat_dot);
    }
    state.t = node.t;
    state.chi = node.chi;
    report.states.push_back(state);

    const double half_chi = (state.chi - state.chi0) / 2.0;
    const double scale = options.proper_time ? node.v0 : 1.0;
    PhaseRow row;
    row.t = node.t;
    if (full) {
      row.delta_dot = scale * node.delta_dot;
      row.gamma_dot = scale * node.gamma_dot;
    }
    if (simple) {
      row.delta_hat_dot = scale * node.delta_hat_dot;
      row.gamma_hat_dot = scale * node.gamma_hat_dot;
    }
    row.beta = node.beta;
    row.v0 = node.v0;
    row.consistency_residual =
        full ? state.delta_L + state.gamma_L + half_chi : state.delta_hat + state.gamma_hat + half_chi;
    report.max_consistency_residual = std::max(report.max_consistency_residual, std::abs(row.consistency_residual));
    report.series.push_back(row);
  }

  const PhaseState& last = report.states.back();
  if (full) {
    report.finals.delta_G = last.delta_L;
    report.finals.gamma_G = last.gamma_L;
  }
  if (simple) {
    report.finals.delta_hat_G = last.delta_hat;
    report.finals.gamma_hat_G = last.gamma_hat;
  }
  report.finals.total = 0.0 - (last.chi - last.chi0) / 2.0;
  try {
    report.final_rotor = kinematics_at(traj, T).rotor;
  } catch (const Error& e) {
    throw IntegrationError(e.what(), T);
  }
  return report;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw DomainError("trapezoid: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

PhaseRemovedTrajectory::PhaseRemovedTrajectory(std::shared_ptr<const Trajectory> base, std::vector<double> t,
                                               std::vector<double> delta, std::vector<double> delta_dot)
    : base_(std::move(base)), t_(std::move(t)), delta_(std::move(delta)), delta_dot_(std::move(delta_dot)) {
  if (t_.size() < 2 || t_.size() != delta_.size() || t_.size() != delta_dot_.size()) {
    throw DomainError("PhaseRemovedTrajectory: need matching tables with at least two nodes");
  }
}

std::size_t PhaseRemovedTrajectory::segment(double t) const {
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const auto i = static_cast<std::size_t>(std::distance(t_.begin(), it));
  return std::clamp<std::size_t>(i, 1, t_.size() - 1) - 1;
}

double PhaseRemovedTrajectory::delta(double t) const {
  const std::size_t i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double s = (t - t_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * delta_[i] + (s3 - 2 * s2 + s) * h * delta_dot_[i] +
         (-2 * s3 + 3 * s2) * delta_[i + 1] + (s3 - s2) * h * delta_dot_[i + 1];
}

double PhaseRemovedTrajectory::delta_rate(double t) const {
  const std::size_t i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double s = (t - t_[i]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * delta_[i] + (-6 * s2 + 6 * s) * delta_[i + 1]) / h +
         (3 * s2 - 4 * s + 1) * delta_dot_[i] + (3 * s2 - 2 * s) * delta_dot_[i + 1];
}

Multivector PhaseRemovedTrajectory::psi(double t) const {
  const double d = delta(t);
  return base_->psi(t) * (std::cos(d) * one - std::sin(d) * Isigma3);
}

std::optional<Multivector> PhaseRemovedTrajectory::psi_dot(double t) const {
  const auto base_dot = base_->psi_dot(t);
  if (!base_dot) return std::nullopt;
  const double d = delta(t);
  const Multivector e = std::cos(d) * one - std::sin(d) * Isigma3;
  return (*base_dot - delta_rate(t) * (base_->psi(t) * Isigma3)) * e;
}

std::unique_ptr<PhaseRemovedTrajectory> remove_dynamic_phase(std::shared_ptr<const Trajectory> base, int steps) {
  PhaseOptions options;
  options.steps = steps;
  options.formula = Formula::full;
  const PhaseReport report = integrate_phases(*base, options);
  std::vector<double> t, delta, delta_dot;
  for (std::size_t i = 0; i < report.states.size(); ++i) {
    t.push_back(report.states[i].t);
    delta.push_back(report.states[i].delta_L);
    delta_dot.push_back(*report.series[i].delta_dot);
  }
  return std::make_unique<PhaseRemovedTrajectory>(std::move(base), std::move(t), std::move(delta),
                                                  std::move(delta_dot));
}

AdiabaticRates adiabatic_standard_geometric_rate(const Trajectory& eigencurve, double t) {
  const Kinematics k = kinematics_at(eigencurve, t);
  const Multivector psi = eigencurve.psi(t);
  Multivector psi_dot;
  if (auto d = eigencurve.psi_dot(t)) {
    psi_dot = *d;
  } else {
    const double h = 1e-5 * std::max(1.0, eigencurve.duration());
    psi_dot = (eigencurve.psi(t + h) - eigencurve.psi(t - h)) / (2.0 * h);
  }
  if (!(k.varrho > kDensityEpsilon)) throw DegenerateSpinorError("adiabatic rate: density below threshold");
  AdiabaticRates a;
  a.standard_rate = -hermitian_dynamic_density(Spinor(psi), psi_dot) / k.varrho;
  a.gamma_hat_rate = geometric_rate_simple(k);
  a.half_chi_dot = k.chi_dot / 2.0;
  a.offset_residual = a.standard_rate - a.gamma_hat_rate - a.half_chi_dot;
  return a;
}

}  // namespace sta
