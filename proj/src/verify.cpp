#include "sta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "sta/errors.hpp"
#include "sta/kernels.hpp"
#include "sta/matrix_bridge.hpp"
#include "sta/phase.hpp"
#include "sta/scenarios.hpp"
#include "sta/spinor.hpp"

namespace sta {

using namespace basis;

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  explicit Recorder(const VerifyConfig& config) : config_(config) {}

  void upper(const std::string& name, double residual, double tolerance) {
    const double tol = config_.tolerance.value_or(tolerance);
    outcomes_.push_back({name, residual <= tol, residual, tol, false});
  }
  void lower(const std::string& name, double value, double bound) {
    outcomes_.push_back({name, value > bound, value, bound, true});
  }
  // Records a failure for a check that threw.
  void error(const std::string& name, const std::exception& e) {
    outcomes_.push_back({name + " (" + e.what() + ")", false, std::nan(""), 0.0, false});
  }

  std::vector<VerifyOutcome> take() { return std::move(outcomes_); }

 private:
  const VerifyConfig& config_;
  std::vector<VerifyOutcome> outcomes_;
};

struct Sampler {
  std::mt19937_64 rng;

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

  EulerAngles angles() { return {uniform(-kPi, kPi), uniform(0.05, kPi - 0.05), uniform(-kPi, kPi)}; }
  BoostParams boost(double r) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
  Rotor rotor(double r = 1.5) { return boost_rotor(boost(r)) * euler_rotor(angles()); }
  Multivector spinor() {
    return compose({uniform(0.2, 3.0), uniform(-3.0, 3.0), rotor()}).value();
  }

  Series series(double c0, double spread, double amp) {
    return Series{{c0 + uniform(-spread, spread), uniform(-spread, spread)},
                  {{uniform(-amp, amp), uniform(0.5, 2.0)}},
                  {{uniform(-amp, amp), uniform(0.5, 2.0)}}};
  }

  EulerSeries trajectory() {
    EulerSeries s;
    s.rho = Series{{uniform(1.0, 2.0)}, {{uniform(-0.3, 0.3), uniform(0.5, 2.0)}}, {}};
    s.beta = series(0.0, 0.8, 0.5);
    s.phi = series(0.0, 1.5, 0.8);
    s.theta = Series{{uniform(1.2, 1.9)}, {{uniform(-0.4, 0.4), uniform(0.5, 2.0)}}, {}};
    s.chi = series(0.0, 2.0, 0.8);
    s.b1 = series(0.0, 0.3, 0.2);
    s.b2 = series(0.0, 0.3, 0.2);
    s.b3 = series(0.0, 0.3, 0.2);
    return s;
  }
};

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

ScenarioSpec spec_of(ScenarioParams p, double duration, int steps = 10000) { return {std::move(p), duration, steps}; }

// ---------------------------------------------------------------- 1
void algebra_oracle(const VerifyConfig& cfg, Recorder& rec, Sampler& rnd) {
  const GammaRep& rep = GammaRep::standard();
  double worst = 0.0;
  for (int a = 0; a < kBladeCount; ++a) {
    for (int b = 0; b < kBladeCount; ++b) {
      const auto ba = Blade{static_cast<std::uint8_t>(a)};
      const auto bb = Blade{static_cast<std::uint8_t>(b)};
      const Multivector p = product_with_table(cfg.table, Multivector::blade(ba), Multivector::blade(bb));
      worst = std::max(worst, max_abs(rep.image(p) - rep.image(ba) * rep.image(bb)));
    }
  }
  rec.upper("blade products vs 4x4 matrices (256 pairs)", worst, 1e-12);

  double assoc = 0.0;
  double rev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Multivector x, y, z;
    for (int k = 0; k < kBladeCount; ++k) {
      x[k] = rnd.uniform(-1, 1);
      y[k] = rnd.uniform(-1, 1);
      z[k] = rnd.uniform(-1, 1);
    }
    const auto mul = [&](const Multivector& u, const Multivector& v) { return product_with_table(cfg.table, u, v); };
    const Multivector lhs = mul(mul(x, y), z);
    assoc = std::max(assoc, (lhs - mul(x, mul(y, z))).max_abs() / std::max(1.0, lhs.max_abs()));
    rev = std::max(rev, (reversion(mul(x, y)) - mul(reversion(y), reversion(x))).max_abs());
  }
  rec.upper("associativity (1000 triples, relative)", assoc, 1e-10);
  rec.upper("reversion anti-homomorphism", rev, 1e-10);
}

// ---------------------------------------------------------------- 2
void worked_rotation(const VerifyConfig&, Recorder& rec, Sampler&) {
  const Multivector u = exp_bivector(-Isigma3 * (kPi / 4));
  rec.upper("exp(-I s3 pi/4) s2 rev = -s1", (rotate(sigma2, u) + sigma1).max_abs(), 1e-12);
  const Multivector e = euler_rotor({kPi / 2, 0.0, 0.0}).value();
  rec.upper("euler (pi/2, 0, 0) s2 rev = -s1", (rotate(sigma2, e) + sigma1).max_abs(), 1e-12);
}

// ---------------------------------------------------------------- 3
void polar_round_trip(const VerifyConfig&, Recorder& rec, Sampler& rnd) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double rho = rnd.uniform(0.1, 5.0);
    const double beta = rnd.uniform(-kPi + 1e-6, kPi);
    const Rotor r = rnd.rotor();
    const SpinorPolar p = polar_decompose(compose({rho, beta, r}));
    worst = std::max({worst, std::abs(p.rho - rho), std::abs(wrap_angle(p.beta - beta)),
                      (p.rotor.value() - r.value()).max_abs()});
  }
  rec.upper("compose -> decompose (1000 samples)", worst, 1e-10);
  const SpinorPolar p = polar_decompose(Spinor(I));
  rec.upper("psi = I -> (1, pi, 1)",
            std::max({std::abs(p.rho - 1.0), std::abs(p.beta - kPi), (p.rotor.value() - one).max_abs()}), 1e-10);
}

// ---------------------------------------------------------------- 4
void observable_invariants(const VerifyConfig& cfg, Recorder& rec, Sampler& rnd) {
  std::vector<Rotor> rotors;
  for (int i = 0; i < 1000; ++i) rotors.push_back(rnd.rotor());
  std::vector<kernels::Observables> obs(rotors.size());
  if (cfg.parallel) {
    kernels::observables_parallel(rotors, obs);
  } else {
    kernels::observables_serial(rotors, obs);
  }
  double vv = 0.0, sv = 0.0, isv = 0.0, ss = 0.0;
  for (const auto& o : obs) {
    vv = std::max(vv, (o.v * o.v - one).max_abs());
    sv = std::max(sv, std::abs(scalar_product(o.s, o.v)));
    isv = std::max(isv, (o.S - I * o.s * o.v).max_abs());
    ss = std::max(ss, std::abs(scalar_product(o.S, o.S) + 0.25));
  }
  rec.upper("|vv - 1|", vv, 1e-10);
  rec.upper("|s.v|", sv, 1e-10);
  rec.upper("|S - Isv|", isv, 1e-10);
  rec.upper("|<SS> + 1/4|", ss, 1e-10);

  double density = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Multivector psi = rnd.spinor();
    const SpinorPolar p = polar_decompose(Spinor(psi));
    const double varrho = p.rho * scalar_product(velocity(p.rotor), g0);
    const ComplexSpinor4 m = to_matrix_spinor(psi);
    density = std::max(density, std::abs(hermitian_product(m, m).real() - varrho));
  }
  rec.upper("varrho = rho v0 = Psi^dagger Psi", density, 1e-10);
}

// ---------------------------------------------------------------- 5
void derivation_chain(const VerifyConfig&, Recorder& rec, Sampler& rnd) {
  double dyn = 0.0, geo = 0.0, route = 0.0;
  for (int n = 0; n < 40; ++n) {
    const EulerTrajectory traj(rnd.trajectory(), 2.0);
    for (int j = 0; j < 5; ++j) {
      const double t = rnd.uniform(0.0, 2.0);
      const Multivector psi = traj.psi(t);
      const Multivector psi_dot = *traj.psi_dot(t);
      const Kinematics k = kinematics_at(traj, t);
      const RateBreakdown d = dynamic_rate_full(k, k.S_dot);
      const RateBreakdown g = geometric_rate_full(k, k.S_dot);
      dyn = std::max(dyn, std::abs(hermitian_dynamic_density(Spinor(psi), psi_dot) - k.varrho * d.total));
      geo = std::max(geo, std::abs(g.total + d.total + k.chi_dot / 2.0));
      const Kinematics e = kinematics_from_spinor(psi, psi_dot);
      route = std::max({route, std::abs(dynamic_rate_full(e, e.S_dot).total - d.total),
                        std::abs(geometric_rate_full(e, e.S_dot).total - g.total)});
    }
  }
  rec.upper("-<dpsi I s3 g0 rev(psi) g0> = varrho d delta/dt (200 samples)", dyn, 1e-8);
  rec.upper("d gamma/dt = -dchi/dt/2 - d delta/dt", geo, 1e-8);
  rec.upper("extraction route = frame route", route, 1e-8);

  double zero = 0.0;
  for (int n = 0; n < 3; ++n) {
    auto base = std::make_shared<EulerTrajectory>(rnd.trajectory(), 2.0);
    const auto removed = remove_dynamic_phase(base, 2000);
    for (int j = 0; j < 50; ++j) {
      const double t = rnd.uniform(0.0, 2.0);
      const Multivector psi = removed->psi(t);
      const Multivector psi_dot = *removed->psi_dot(t);
      zero = std::max(zero, std::abs(hermitian_dynamic_density(Spinor(psi), psi_dot)));
    }
  }
  rec.upper("<dpsi' I s3 g0 rev(psi') g0> after phase removal", zero, 1e-6);
}

std::vector<std::pair<std::string, ScenarioSpec>> builtin_scenarios(Sampler& rnd) {
  return {
      {"rest electron", spec_of(RestPlaneWave{1.0, Particle::electron, 0.0}, 1.0)},
      {"rest positron", spec_of(RestPlaneWave{1.0, Particle::positron, 0.0}, 1.0)},
      {"boosted plane wave", spec_of(BoostedPlaneWave{1.0, Particle::electron, {0.3, -0.2, 0.5}, 0.0}, 1.0)},
      {"precession loop", spec_of(PrecessionLoop{kPi / 3, 0.0, Traversal::linear, 0.0}, 1.0)},
      {"precession loop t^2", spec_of(PrecessionLoop{kPi / 3, 0.0, Traversal::quadratic, 0.0}, 1.0)},
      {"boosted precession", spec_of(BoostedPrecession{1.0, kPi / 3, 0.0, 0.0}, 1.0)},
      {"beta ramp", spec_of(BetaRamp{0.5, 1.0, kPi / 3, 1.0}, 2.0)},
      {"custom euler", spec_of(CustomEuler{rnd.trajectory()}, 2.0)},
  };
}

// ---------------------------------------------------------------- 6
void total_phase_ledger(const VerifyConfig& cfg, Recorder& rec, Sampler& rnd) {
  for (const auto& [name, spec] : builtin_scenarios(rnd)) {
    const auto traj = make_trajectory(spec);
    PhaseOptions opt;
    opt.steps = spec.steps;
    opt.parallel = cfg.parallel;
    const PhaseReport r = integrate_phases(*traj, opt);
    double full = 0.0, simple = 0.0;
    for (const PhaseState& s : r.states) {
      const double half = (s.chi - s.chi0) / 2.0;
      full = std::max(full, std::abs(s.delta_L + s.gamma_L + half));
      simple = std::max(simple, std::abs(s.delta_hat + s.gamma_hat + half));
    }
    rec.upper(name + ": delta + gamma + dchi/2", full, 1e-6);
    rec.upper(name + ": delta^ + gamma^ + dchi/2", simple, 1e-6);
    if (name == "rest electron") rec.upper("rest electron total phase = -m t", std::abs(r.finals.total + 1.0), 1e-8);
  }
}

double loop_gamma_hat(double theta0, Traversal traversal, bool parallel) {
  const auto traj = make_trajectory(spec_of(PrecessionLoop{theta0, 0.0, traversal, 0.0}, 1.0));
  PhaseOptions opt;
  opt.formula = Formula::simple;
  opt.parallel = parallel;
  return *integrate_phases(*traj, opt).finals.gamma_hat_G;
}

// ---------------------------------------------------------------- 7
void closed_loop(const VerifyConfig& cfg, Recorder& rec, Sampler&) {
  const double third = loop_gamma_hat(kPi / 3, Traversal::linear, cfg.parallel);
  rec.upper("theta0 = pi/3: gamma^_G = pi/2", std::abs(third - kPi / 2), 1e-6);
  rec.upper("theta0 = pi/2: gamma^_G = 0", std::abs(loop_gamma_hat(kPi / 2, Traversal::linear, cfg.parallel)), 1e-6);
  rec.upper("t -> t^2 traversal leaves gamma^_G unchanged",
            std::abs(loop_gamma_hat(kPi / 3, Traversal::quadratic, cfg.parallel) - third), 1e-6);
  rec.upper("theta0 = 0: gamma^_G = pi", std::abs(loop_gamma_hat(0.0, Traversal::linear, cfg.parallel) - kPi), 1e-6);
}

// ---------------------------------------------------------------- 8
void relativistic_collapse(const VerifyConfig&, Recorder& rec, Sampler& rnd) {
  const auto sweep = [&](const ScenarioSpec& spec, auto&& fn) {
    const auto traj = make_trajectory(spec);
    for (int j = 0; j < 200; ++j) fn(rate_sample(*traj, rnd.uniform(0.0, spec.duration)));
  };

  double nonrel = 0.0;
  const auto collapse = [&](const RateSample& s) {
    nonrel = std::max({nonrel, std::abs(s.delta_dot - s.delta_hat_dot), std::abs(s.gamma_dot - s.gamma_hat_dot)});
  };
  sweep(spec_of(PrecessionLoop{kPi / 3, 0.0, Traversal::linear, 1.3}, 1.0), collapse);
  sweep(spec_of(BetaRamp{0.5, 0.0, kPi / 3, 1.0}, 2.0), collapse);
  rec.upper("zero boost: full = simple", nonrel, 1e-12);

  double differ = 0.0, sum = 0.0, cancel = 0.0;
  const auto boosted = [&](const RateSample& s) {
    differ = std::max(differ, std::abs(s.delta_dot - s.delta_hat_dot));
    sum = std::max(sum, std::abs(s.delta_dot + s.gamma_dot + s.chi_dot / 2.0));
    cancel = std::max(cancel, std::abs((s.delta_dot - s.delta_hat_dot) + (s.gamma_dot - s.gamma_hat_dot)));
  };
  sweep(spec_of(BetaRamp{0.5, 1.0, kPi / 3, 1.0}, 2.0), boosted);
  rec.lower("rapidity 1 with chiral ramp: max |full - simple|", differ, 1e-3);

  double constant_boost = 0.0;
  sweep(spec_of(BoostedPrecession{1.0, kPi / 3, 0.0, 0.7}, 1.0), [&](const RateSample& s) {
    boosted(s);
    constant_boost = std::max(constant_boost, std::abs(s.delta_dot - s.delta_hat_dot));
  });
  rec.upper("rapidity 1: d delta/dt + d gamma/dt = -dchi/dt/2", sum, 1e-8);
  rec.upper("rapidity 1: corrections cancel in the total", cancel, 1e-8);
  rec.upper("constant boost, no chiral ramp: correction vanishes", constant_boost, 1e-10);
}

// ---------------------------------------------------------------- 9
void gauge_shift(const VerifyConfig& cfg, Recorder& rec, Sampler&) {
  const double T = 6.0;
  const auto base = make_trajectory(spec_of(BoostedPrecession{0.5, kPi / 3, 1.0, 0.0}, T));
  const auto alpha = [](double t) { return 0.3 * std::sin(t); };
  const auto alpha_dot = [](double t) { return 0.3 * std::cos(t); };
  const auto gauge = [&](double t) { return std::cos(alpha(t)) * one + std::sin(alpha(t)) * Isigma3; };
  const FunctionTrajectory shifted(
      T, [&](double t) { return base->psi(t) * gauge(t); },
      [&](double t) {
        return (*base->psi_dot(t) + alpha_dot(t) * (base->psi(t) * Isigma3)) * gauge(t);
      });

  PhaseOptions opt;
  opt.steps = 2000;
  opt.formula = Formula::simple;
  opt.parallel = cfg.parallel;
  const PhaseReport a = integrate_phases(*base, opt);
  const PhaseReport b = integrate_phases(shifted, opt);
  double gamma = 0.0, delta = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const double t = a.states[i].t;
    gamma = std::max(gamma, std::abs(b.states[i].gamma_hat - a.states[i].gamma_hat));
    delta = std::max(delta, std::abs(b.states[i].delta_hat - a.states[i].delta_hat - (alpha(t) - alpha(0.0))));
  }
  rec.upper("gamma^_L unchanged", gamma, 1e-8);
  rec.upper("delta^_L shifted by alpha(t) - alpha(0)", delta, 1e-8);

  // Constant alpha: rays are unchanged, so are both rates.
  const double c = 0.7;
  const Multivector e = std::cos(c) * one + std::sin(c) * Isigma3;
  double constant = 0.0;
  for (int j = 0; j <= 20; ++j) {
    const double t = T * j / 20.0;
    const Kinematics k0 = kinematics_from_spinor(base->psi(t), *base->psi_dot(t));
    const Kinematics k1 = kinematics_from_spinor(base->psi(t) * e, *base->psi_dot(t) * e);
    constant = std::max({constant, std::abs(dynamic_rate_simple(k0) - dynamic_rate_simple(k1)),
                         std::abs(geometric_rate_simple(k0) - geometric_rate_simple(k1))});
  }
  rec.upper("constant alpha leaves both rates unchanged", constant, 1e-8);
}

// ---------------------------------------------------------------- 10
void matrix_correspondences(const VerifyConfig&, Recorder& rec, Sampler& rnd) {
  const GammaRep& rep = GammaRep::standard();
  const Complex i(0.0, 1.0);
  double g5 = 0.0, bar = 0.0, bar5 = 0.0, herm = 0.0, dirac = 0.0, chiral = 0.0, rotor = 0.0, contracts = 0.0;
  double trip = 0.0, cut = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Multivector psi = rnd.spinor();
    const Multivector phi = rnd.spinor();
    const ComplexSpinor4 P = to_matrix_spinor(psi);
    const ComplexSpinor4 F = to_matrix_spinor(phi);
    const SpinorPolar p = polar_decompose(Spinor(psi));

    g5 = std::max(g5, max_abs(to_matrix_spinor(psi * sigma3) - rep.gamma5() * P));
    bar = std::max(bar, std::abs(dirac_product(P, P) - Complex(p.rho * std::cos(p.beta), 0.0)));
    bar5 = std::max(bar5, std::abs(dirac_product(P, i * (rep.gamma5() * P)) + Complex(p.rho * std::sin(p.beta), 0.0)));

    const Amplitude h = amplitude_hermitian(psi, phi);
    herm = std::max(herm, std::abs(hermitian_product(P, F) - Complex(h.re, h.im)));
    const Amplitude d = amplitude_dirac(psi, phi);
    dirac = std::max(dirac, std::abs(dirac_product(P, F) - Complex(d.re, d.im)));

    const ComplexSpinor4 R = extract_matrix_rotor(P);
    // Within the principal branch R is invariant; across the cut at beta = pi it changes sign.
    const double within = rnd.uniform(-kPi + 0.01 - p.beta, kPi - 0.01 - p.beta);
    chiral = std::max(chiral, max_abs(extract_matrix_rotor(chiral_transform(P, within)) - R));
    const double across = p.beta >= 0.0 ? 2.0 * kPi - 2.0 * p.beta : -2.0 * kPi - 2.0 * p.beta;
    if (std::abs(p.beta) > 0.05) cut = std::max(cut, max_abs(extract_matrix_rotor(chiral_transform(P, across)) + R));
    rotor = std::max(rotor, max_abs(R - to_matrix_spinor(p.rotor.value())));

    contracts = std::max({contracts, max_abs(to_matrix_spinor(psi * Isigma3) - i * P),
                          max_abs(to_matrix_spinor(I * psi) - i * (rep.gamma5() * P))});
    for (int mu = 0; mu < 4; ++mu) {
      contracts = std::max(contracts, max_abs(to_matrix_spinor(gamma[mu] * psi * g0) - rep.lower(mu) * P));
    }
    trip = std::max(trip, (from_matrix_spinor(P) - psi).max_abs());
  }
  rec.upper("gamma5 Psi <-> psi s3", g5, 1e-10);
  rec.upper("Psi-bar Psi = rho cos(beta)", bar, 1e-10);
  rec.upper("Psi-bar i gamma5 Psi = -rho sin(beta)", bar5, 1e-10);
  rec.upper("Psi^dagger Phi = <phi g0 rev(psi) g0> - ...", herm, 1e-10);
  rec.upper("Psi-bar Phi = <phi rev(psi)> - ...", dirac, 1e-10);
  rec.upper("R invariant under chiral transforms", chiral, 1e-10);
  rec.upper("R changes sign across the beta branch cut", cut, 1e-10);
  rec.upper("matrix R <-> rotor R", rotor, 1e-10);
  rec.upper("i, i gamma5 and gamma_mu contracts", contracts, 1e-10);
  rec.upper("spinor map round trip", trip, 1e-12);
}

// ---------------------------------------------------------------- 11
void dirac_residuals(const VerifyConfig&, Recorder& rec, Sampler&) {
  const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const auto sweep = [&](const SpinorField& field, double mass, bool min) {
    double out = min ? std::numeric_limits<double>::infinity() : 0.0;
    for (double t : grid)
      for (double x : grid)
        for (double y : grid)
          for (double z : grid) {
            const double r = dirac_residual(field, Multivector{}, 0.0, mass, {t, x, y, z}).max_abs();
            out = min ? std::min(out, r) : std::max(out, r);
          }
    return out;
  };
  rec.upper("rest electron (beta = 0)", sweep(PlaneWaveField(1.0, Particle::electron), 1.0, false), 1e-10);
  rec.upper("rest positron (beta = pi)", sweep(PlaneWaveField(1.0, Particle::positron), 1.0, false), 1e-10);
  rec.upper("boosted electron", sweep(PlaneWaveField(1.0, Particle::electron, {0.4, -0.3, 0.8}), 1.0, false), 1e-10);
  rec.lower("off-shell frequency 1.5 m: min residual",
            sweep(PlaneWaveField(1.0, Particle::electron, {}, 1.5), 1.0, true), 0.1);
}

// ---------------------------------------------------------------- 12
void adiabatic_offset(const VerifyConfig& cfg, Recorder& rec, Sampler& rnd) {
  const ScenarioSpec spec = spec_of(PrecessionLoop{kPi / 3, 0.0, Traversal::linear, 2.0}, 1.0);
  const auto traj = make_trajectory(spec);
  double offset = 0.0;
  for (int j = 0; j < 200; ++j) {
    offset = std::max(offset, std::abs(adiabatic_standard_geometric_rate(*traj, rnd.uniform(0.0, 1.0)).offset_residual));
  }
  rec.upper("standard rate - gamma^ rate - dchi/dt/2", offset, 1e-8);

  const int n = 2000;
  double standard = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = static_cast<double>(i) / n;
    const double b = static_cast<double>(i + 1) / n;
    standard += (b - a) / 6.0 *
                (adiabatic_standard_geometric_rate(*traj, a).standard_rate +
                 4.0 * adiabatic_standard_geometric_rate(*traj, (a + b) / 2).standard_rate +
                 adiabatic_standard_geometric_rate(*traj, b).standard_rate);
  }
  PhaseOptions opt;
  opt.formula = Formula::simple;
  opt.parallel = cfg.parallel;
  const PhaseReport r = integrate_phases(*traj, opt);
  const double half_chi = (r.states.back().chi - r.states.front().chi) / 2.0;
  rec.upper("closed loop: Gamma_G - gamma^_G = (chi(T) - chi(0))/2",
            std::abs(standard - *r.finals.gamma_hat_G - half_chi), 1e-6);
}

struct GroupDef {
  const char* name;
  void (*fn)(const VerifyConfig&, Recorder&, Sampler&);
};

constexpr GroupDef kGroups[] = {
    {"algebra oracle", algebra_oracle},
    {"worked rotation", worked_rotation},
    {"spinor polar round trip", polar_round_trip},
    {"observable invariants", observable_invariants},
    {"derivation chain", derivation_chain},
    {"total-phase ledger", total_phase_ledger},
    {"closed-loop geometric phase", closed_loop},
    {"nonrelativistic collapse", relativistic_collapse},
    {"gauge-shift law", gauge_shift},
    {"matrix correspondences", matrix_correspondences},
    {"Dirac residual", dirac_residuals},
    {"adiabatic offset", adiabatic_offset},
};

VerifyGroup run_group(int index, const VerifyConfig& cfg) {
  Recorder rec(cfg);
  Sampler rnd{std::mt19937_64(cfg.seed + static_cast<unsigned long long>(index))};
  try {
    kGroups[index].fn(cfg, rec, rnd);
  } catch (const std::exception& e) {
    rec.error("unexpected error", e);
  }
  return {index + 1, kGroups[index].name, rec.take()};
}

}  // namespace

bool VerifyGroup::passed() const {
  return !outcomes.empty() &&
         std::all_of(outcomes.begin(), outcomes.end(), [](const VerifyOutcome& o) { return o.passed; });
}

std::vector<VerifyGroup> run_verify(const VerifyConfig& config) {
  constexpr int n = static_cast<int>(std::size(kGroups));
  std::vector<VerifyGroup> groups(n);
  if (config.parallel) {
    // Inner kernels stay serial inside a group thread.
    VerifyConfig inner = config;
    inner.parallel = false;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) groups[i] = run_group(i, inner);
  } else {
    for (int i = 0; i < n; ++i) groups[i] = run_group(i, config);
  }
  return groups;
}

CayleyTable mutated_table() {
  CayleyTable t = kCayleyTable;
  t[0b0010][0b0100].sign = static_cast<std::int8_t>(-t[0b0010][0b0100].sign);
  return t;
}

bool all_passed(const std::vector<VerifyGroup>& groups) {
  return std::all_of(groups.begin(), groups.end(), [](const VerifyGroup& g) { return g.passed(); });
}

}  // namespace sta
