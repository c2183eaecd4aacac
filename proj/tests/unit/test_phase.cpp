#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "sta/errors.hpp"
#include "sta/matrix_bridge.hpp"
#include "sta/phase.hpp"
#include "sta/scenarios.hpp"

using namespace sta;
using namespace sta::basis;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const Multivector& a, const Multivector& b) { return (a - b).max_abs(); }

Multivector phase(double a) { return std::cos(a) * one + std::sin(a) * Isigma3; }

// Composite 3-point Gauss-Legendre quadrature.
template <class F>
double gauss(F f, double a, double b, int panels) {
  const double x = std::sqrt(0.6);
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    acc += h / 2 * (5.0 / 9 * f(c - x * h / 2) + 8.0 / 9 * f(c) + 5.0 / 9 * f(c + x * h / 2));
  }
  return acc;
}

ScenarioSpec loop(double theta0, Traversal tr = Traversal::linear, double chi_rate = 0.0) {
  return {PrecessionLoop{theta0, 0.0, tr, chi_rate}, 1.0, 10000};
}

EulerSeries random_series(std::mt19937_64& g) {
  auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); };
  auto ser = [&](double spread) {
    return Series{{u(-spread, spread), u(-spread, spread)}, {{u(-0.5, 0.5), u(0.5, 2.0)}}, {}};
  };
  EulerSeries s;
  s.rho = Series{{u(1.0, 2.0)}, {{0.2, 1.1}}, {}};
  s.beta = ser(0.6);
  s.phi = ser(1.0);
  s.theta = Series{{u(1.2, 1.9)}, {{0.3, 0.8}}, {}};
  s.chi = ser(1.0);
  s.b1 = ser(0.3);
  s.b2 = ser(0.3);
  s.b3 = ser(0.3);
  return s;
}

}  // namespace

TEST_CASE("pure-phase curve rates") {
  for (double w : {0.5, 2.0}) {
    CustomEuler c;
    c.series.chi = Series::linear(0.0, w);
    const EulerTrajectory traj(c.series, 1.0);
    const Kinematics k = kinematics_at(traj, 0.3);
    CHECK(dist(k.omega0_full, -w * Isigma3) < 1e-14);
    CHECK(dynamic_rate_simple(k) == doctest::Approx(-w / 2));
    CHECK(dynamic_rate_full(k, k.S_dot).total == doctest::Approx(-w / 2));
    CHECK(geometric_rate_simple(k) == 0.0);
    CHECK(geometric_rate_full(k, k.S_dot).total == doctest::Approx(0.0));
    CHECK(rotor_dynamic_rate(k.rotor, k.rotor_dot) == doctest::Approx(-w / 2));
    CHECK(matrix_phase_rate(to_matrix_spinor(k.rotor.value()), to_matrix_spinor(k.rotor_dot)) ==
          doctest::Approx(rotor_dynamic_rate(k.rotor, k.rotor_dot)).epsilon(1e-12));
  }
}

TEST_CASE("constant rotor has zero rates") {
  CustomEuler c;
  c.series.phi = Series::constant(0.4);
  c.series.theta = Series::constant(1.1);
  c.series.b1 = Series::constant(0.3);
  const EulerTrajectory traj(c.series, 1.0);
  const Kinematics k = kinematics_at(traj, 0.5);
  CHECK(dynamic_rate_simple(k) == 0.0);
  CHECK(geometric_rate_simple(k) == 0.0);
  CHECK(dynamic_rate_full(k, k.S_dot).total == 0.0);
  CHECK(rotor_geometric_rate(k.path_rotor, k.path_rotor_dot) == 0.0);
  CHECK(hermitian_dynamic_density(Spinor(traj.psi(0.5)), *traj.psi_dot(0.5)) == 0.0);
}

TEST_CASE("precession rate closed form") {
  for (double theta0 : {0.3, kPi / 3, kPi / 2, 2.5}) {
    const auto traj = make_trajectory(loop(theta0));
    for (double t : {0.0, 0.37, 0.9}) {
      const RateSample r = rate_sample(*traj, t);
      CHECK(r.gamma_hat_dot == doctest::Approx(2 * kPi * std::cos(theta0) / 2).epsilon(1e-12));
      CHECK(r.gamma_dot == doctest::Approx(r.gamma_hat_dot).epsilon(1e-12));
    }
  }
}

TEST_CASE("full dynamic rate equals the Hermitian density over varrho") {
  std::mt19937_64 g(404);
  for (int i = 0; i < 100; ++i) {
    const EulerTrajectory traj(random_series(g), 2.0);
    const double t = std::uniform_real_distribution<double>(0.0, 2.0)(g);
    const Kinematics k = kinematics_at(traj, t);
    const double density = hermitian_dynamic_density(Spinor(traj.psi(t)), *traj.psi_dot(t));
    CHECK(density == doctest::Approx(k.varrho * dynamic_rate_full(k, k.S_dot).total).epsilon(1e-9));
    // Matrix side: Im(Psi^dagger dPsi)
    const Complex m = hermitian_product(to_matrix_spinor(traj.psi(t)), to_matrix_spinor(*traj.psi_dot(t)));
    CHECK(density == doctest::Approx(m.imag()).epsilon(1e-9));
    // full and simple pairs both sum to -chi'/2
    const double full = dynamic_rate_full(k, k.S_dot).total + geometric_rate_full(k, k.S_dot).total;
    CHECK(full == doctest::Approx(-k.chi_dot / 2).epsilon(1e-9));
    CHECK(dynamic_rate_simple(k) + geometric_rate_simple(k) == doctest::Approx(-k.chi_dot / 2).epsilon(1e-9));
    // breakdown adds up
    const RateBreakdown b = dynamic_rate_full(k, k.S_dot);
    CHECK(b.omega_term + b.relativistic_correction == b.total);
    CHECK(b.omega_term == dynamic_rate_simple(k));
  }
}

TEST_CASE("non-orthochronous kinematics are rejected") {
  Kinematics k;
  k.v0 = 0.0;
  CHECK_THROWS_AS(dynamic_rate_full(k, Multivector{}), NonOrthochronousError);
  k.v0 = -1.0;
  CHECK_THROWS_AS(geometric_rate_full(k, Multivector{}), NonOrthochronousError);
}

TEST_CASE("ray phase difference") {
  const Spinor psi(compose({1.7, 0.4, boost_rotor({0.2, -0.3, 0.5}) * euler_rotor({0.3, 1.0, -0.8})}));
  CHECK(ray_phase_difference(psi, psi) == doctest::Approx(0.0));
  CHECK(ray_phase_difference(psi, Spinor(psi.value() * phase(0.3))) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(ray_phase_difference(psi, Spinor(psi.value() * phase(-2.9))) == doctest::Approx(-2.9).epsilon(1e-12));
  try {
    ray_phase_difference(psi, Spinor(psi.value() * sigma1));
    FAIL("expected NotCorayError");
  } catch (const NotCorayError& e) {
    CHECK(e.residual() > 1e-3);
  }
}

TEST_CASE("constant trajectory integrates to zero") {
  const FunctionTrajectory traj(1.0, [](double) { return 1.3 * one; }, [](double) { return Multivector{}; });
  const PhaseReport r = integrate_phases(traj, {100});
  CHECK(*r.finals.delta_G == 0.0);
  CHECK(*r.finals.gamma_G == 0.0);
  CHECK(*r.finals.delta_hat_G == 0.0);
  CHECK(*r.finals.gamma_hat_G == 0.0);
  CHECK(r.finals.total == 0.0);
  CHECK(!std::signbit(r.finals.total));
  CHECK(r.series.size() == 101);
}

TEST_CASE("closed-loop geometric phase") {
  const auto a = integrate_phases(*make_trajectory(loop(kPi / 3)));
  CHECK(std::abs(*a.finals.gamma_hat_G - kPi / 2) < 1e-6);
  const auto b = integrate_phases(*make_trajectory(loop(kPi / 2)));
  CHECK(std::abs(*b.finals.gamma_hat_G) < 1e-6);
  const auto c = integrate_phases(*make_trajectory(loop(kPi / 3, Traversal::quadratic)));
  CHECK(std::abs(*c.finals.gamma_hat_G - *a.finals.gamma_hat_G) < 1e-6);
  const auto d = integrate_phases(*make_trajectory(loop(0.0)));
  CHECK(std::abs(*d.finals.gamma_hat_G - kPi) < 1e-6);
}

TEST_CASE("integrator agrees with an independent Gauss quadrature") {
  std::mt19937_64 g(505);
  const EulerTrajectory traj(random_series(g), 2.0);
  const PhaseReport r = integrate_phases(traj, {2000});
  const auto rate = [&](double RateSample::*f) {
    return [&traj, f](double t) { return rate_sample(traj, t).*f; };
  };
  CHECK(*r.finals.delta_G == doctest::Approx(gauss(rate(&RateSample::delta_dot), 0, 2, 400)).epsilon(1e-9));
  CHECK(*r.finals.gamma_G == doctest::Approx(gauss(rate(&RateSample::gamma_dot), 0, 2, 400)).epsilon(1e-9));
  CHECK(*r.finals.delta_hat_G == doctest::Approx(gauss(rate(&RateSample::delta_hat_dot), 0, 2, 400)).epsilon(1e-9));
  CHECK(*r.finals.gamma_hat_G == doctest::Approx(gauss(rate(&RateSample::gamma_hat_dot), 0, 2, 400)).epsilon(1e-9));
  CHECK(r.max_consistency_residual < 1e-6);
}

TEST_CASE("rest electron total phase") {
  const auto traj = make_trajectory({RestPlaneWave{1.0, Particle::electron, 0.0}, 1.0, 10000});
  const PhaseReport r = integrate_phases(*traj);
  CHECK(std::abs(r.finals.total + 1.0) < 1e-8);
  CHECK(std::abs(*r.finals.delta_G + 1.0) < 1e-8);
  CHECK(std::abs(*r.finals.gamma_G) < 1e-12);
}

TEST_CASE("chi is unwrapped across the branch cut") {
  CustomEuler c;
  c.series.chi = Series::linear(0.0, 20.0);  // several turns
  const EulerTrajectory traj(c.series, 1.0);
  const PhaseReport r = integrate_phases(traj, {1000});
  CHECK(r.finals.total == doctest::Approx(-10.0).epsilon(1e-12));
  CHECK(r.max_consistency_residual < 1e-9);
}

TEST_CASE("formula selection leaves the other columns empty") {
  const auto traj = make_trajectory(loop(1.0));
  const PhaseReport s = integrate_phases(*traj, {100, Formula::simple});
  CHECK(!s.finals.delta_G);
  CHECK(!s.series[3].gamma_dot);
  CHECK(s.series[3].gamma_hat_dot);
  const PhaseReport f = integrate_phases(*traj, {100, Formula::full});
  CHECK(!f.finals.gamma_hat_G);
  CHECK(f.series[3].delta_dot);
  CHECK(formula_name(Formula::both) == "both");
}

TEST_CASE("proper time scales rates only") {
  const ScenarioSpec spec{BoostedPrecession{0.9, kPi / 3, 0.0, 0.3}, 1.0, 200};
  const auto traj = make_trajectory(spec);
  PhaseOptions opt{200};
  const PhaseReport a = integrate_phases(*traj, opt);
  opt.proper_time = true;
  const PhaseReport b = integrate_phases(*traj, opt);
  CHECK(*a.finals.gamma_hat_G == *b.finals.gamma_hat_G);
  CHECK(a.finals.total == b.finals.total);
  for (std::size_t i = 0; i < a.series.size(); i += 37) {
    CHECK(*b.series[i].delta_dot == doctest::Approx(*a.series[i].delta_dot * std::cosh(0.9)).epsilon(1e-12));
    CHECK(*b.series[i].gamma_hat_dot == doctest::Approx(*a.series[i].gamma_hat_dot * std::cosh(0.9)).epsilon(1e-12));
  }
}

TEST_CASE("serial and parallel sampling give identical reports") {
  std::mt19937_64 g(606);
  const EulerTrajectory traj(random_series(g), 2.0);
  PhaseOptions opt{3000};
  const PhaseReport a = integrate_phases(traj, opt);
  opt.parallel = false;
  const PhaseReport b = integrate_phases(traj, opt);
  REQUIRE(a.states.size() == b.states.size());
  CHECK(std::memcmp(a.states.data(), b.states.data(), a.states.size() * sizeof(PhaseState)) == 0);
}

TEST_CASE("integration failure reports the failing time") {
  CustomEuler c;
  c.series.rho = Series{{1.0, -1.0}, {}, {}};  // crosses zero at t = 1
  const EulerTrajectory traj(c.series, 2.0);
  for (bool parallel : {true, false}) {
    PhaseOptions opt{10};
    opt.parallel = parallel;
    try {
      integrate_phases(traj, opt);
      FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
      CHECK(e.time() == doctest::Approx(1.0));
    }
  }
  CHECK_THROWS_AS(integrate_phases(traj, {1}), DomainError);
}

TEST_CASE("trapezoid") {
  CHECK(trapezoid({0, 1, 2}, {0, 1, 2}) == 2.0);
  CHECK(trapezoid({0}, {5}) == 0.0);
  CHECK_THROWS_AS(trapezoid({0, 1}, {0}), DomainError);
}

TEST_CASE("gauge shift law") {
  std::mt19937_64 g(707);
  const auto base = std::make_shared<EulerTrajectory>(random_series(g), 2.0);
  const auto alpha = [](double t) { return 0.3 * std::sin(t); };
  const auto alpha_dot = [](double t) { return 0.3 * std::cos(t); };
  const FunctionTrajectory shifted(
      2.0, [&](double t) { return base->psi(t) * phase(alpha(t)); },
      [&](double t) {
        return *base->psi_dot(t) * phase(alpha(t)) + alpha_dot(t) * (base->psi(t) * Isigma3 * phase(alpha(t)));
      });
  PhaseOptions opt{2000};
  const PhaseReport a = integrate_phases(*base, opt);
  const PhaseReport b = integrate_phases(shifted, opt);
  for (std::size_t i = 0; i < a.states.size(); i += 50) {
    const double t = a.states[i].t;
    CHECK(std::abs(b.states[i].gamma_hat - a.states[i].gamma_hat) < 1e-8);
    // delta^ picks up exactly the shift; sign follows delta^' = -Omega0.S with Omega0 -> Omega0 + 4 alpha' S
    CHECK(std::abs((b.states[i].delta_hat - a.states[i].delta_hat) - (alpha(t) - alpha(0))) < 1e-8);
  }
}

TEST_CASE("dynamic phase removal") {
  // pure-phase curve: removal leaves a constant spinor
  CustomEuler c;
  c.series.chi = Series::linear(0.2, 3.0);
  c.series.theta = Series::constant(0.7);
  const auto base = std::make_shared<EulerTrajectory>(c.series, 1.0);
  const auto removed = remove_dynamic_phase(base, 200);
  const Multivector start = removed->psi(0.0);
  for (double t : {0.1, 0.45, 1.0}) CHECK(dist(removed->psi(t), start) < 1e-12);

  // delta = 0 everywhere leaves psi untouched
  const PhaseRemovedTrajectory identity(base, {0.0, 1.0}, {0.0, 0.0}, {0.0, 0.0});
  CHECK(dist(identity.psi(0.3), base->psi(0.3)) == 0.0);
  CHECK_THROWS_AS(PhaseRemovedTrajectory(base, {0.0}, {0.0}, {0.0}), DomainError);
}

TEST_CASE("phase removal interpolation is consistent") {
  std::mt19937_64 g(808);
  const auto base = std::make_shared<EulerTrajectory>(random_series(g), 2.0);
  const auto removed = remove_dynamic_phase(base, 400);
  const double h = 1e-5;
  for (double t : {0.31, 1.23}) {
    CHECK(removed->delta_rate(t) == doctest::Approx((removed->delta(t + h) - removed->delta(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(dist(*removed->psi_dot(t), (removed->psi(t + h) - removed->psi(t - h)) / (2 * h)) < 1e-7);
    // after removal the full dynamic rate vanishes
    const Kinematics k = kinematics_at(*removed, t);
    CHECK(std::abs(dynamic_rate_full(k, k.S_dot).total) < 1e-6);
  }
}

TEST_CASE("adiabatic offset") {
  const auto eigen = make_trajectory(loop(kPi / 3, Traversal::linear, 2.0));
  for (double t : {0.0, 0.3, 0.8}) {
    const AdiabaticRates a = adiabatic_standard_geometric_rate(*eigen, t);
    CHECK(std::abs(a.offset_residual) < 1e-8);
    CHECK(a.half_chi_dot == doctest::Approx(1.0));
  }
  const FunctionTrajectory constant(1.0, [](double) { return one; }, [](double) { return Multivector{}; });
  const AdiabaticRates z = adiabatic_standard_geometric_rate(constant, 0.5);
  CHECK(z.standard_rate == 0.0);
  CHECK(z.offset_residual == 0.0);
}
