#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sta/errors.hpp"
#include "sta/scenarios.hpp"
#include "sta/spinor.hpp"

using namespace sta;
using namespace sta::basis;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const Multivector& a, const Multivector& b) { return (a - b).max_abs(); }

struct Rng {
  std::mt19937_64 g{202};
  double operator()(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
  Rotor rotor() {
    return boost_rotor({(*this)(-1, 1), (*this)(-1, 1), (*this)(-1, 1)}) *
           euler_rotor({(*this)(-kPi, kPi), (*this)(0.1, 3.0), (*this)(-kPi, kPi)});
  }
  Series series(double c0, double spread) {
    return Series{{c0 + (*this)(-spread, spread), (*this)(-spread, spread)},
                  {{(*this)(-0.5, 0.5), (*this)(0.5, 2.0)}},
                  {{(*this)(-0.5, 0.5), (*this)(0.5, 2.0)}}};
  }
  EulerSeries trajectory() {
    EulerSeries s;
    s.rho = Series{{(*this)(1.0, 2.0)}, {{0.2, 1.3}}, {}};
    s.beta = series(0.0, 0.6);
    s.phi = series(0.0, 1.0);
    s.theta = Series{{(*this)(1.2, 1.9)}, {{0.3, 0.7}}, {}};
    s.chi = series(0.0, 1.0);
    s.b1 = series(0.0, 0.3);
    s.b2 = series(0.0, 0.3);
    s.b3 = series(0.0, 0.3);
    return s;
  }
};

Multivector phase(double a) { return std::cos(a) * one + std::sin(a) * Isigma3; }

RotorCurve spin_about_s3(double omega) {
  return {[omega](double t) { return exp_bivector(-Isigma3 * (omega * t / 2)); }, {}, -10.0, 10.0};
}

}  // namespace

TEST_CASE("Spinor rejects odd input") {
  CHECK_THROWS_AS(Spinor{g1}, DomainError);
  CHECK_THROWS_AS(Spinor(one + g0 * g1 * g2), DomainError);
  CHECK_NOTHROW(Spinor(one + I + sigma2));
}

TEST_CASE("polar_decompose examples") {
  const auto two = polar_decompose(Spinor(2.0 * one));
  CHECK(two.rho == doctest::Approx(4.0));
  CHECK(two.beta == 0.0);
  CHECK(dist(two.rotor.value(), one) < 1e-15);

  const auto i = polar_decompose(Spinor(I));
  CHECK(i.rho == doctest::Approx(1.0));
  CHECK(i.beta == doctest::Approx(kPi));
  CHECK(dist(i.rotor.value(), one) < 1e-15);

  CHECK(dist(compose({1, 0, Rotor{}}).value(), one) < 1e-15);
  CHECK(dist(compose({1, kPi, Rotor{}}).value(), I) < 1e-15);

  CHECK_THROWS_AS(polar_decompose(Spinor(Multivector{})), DegenerateSpinorError);
  // 1 + s3 is null: (1 + s3)(1 - s3) = 0
  CHECK_THROWS_AS(polar_decompose(Spinor(one + sigma3)), DegenerateSpinorError);
}

TEST_CASE("polar round trip") {
  Rng rng;
  for (int i = 0; i < 1000; ++i) {
    const double rho = rng(0.1, 5.0);
    const double beta = rng(-kPi + 1e-6, kPi);
    const Rotor R = rng.rotor();
    const auto p = polar_decompose(compose({rho, beta, R}));
    CHECK(p.rho == doctest::Approx(rho).epsilon(1e-12));
    CHECK(std::abs(p.beta - beta) < 1e-10);
    CHECK(dist(p.rotor.value(), R.value()) < 1e-10);
  }
}

TEST_CASE("observables of the identity rotor") {
  const Rotor one_r;
  CHECK(velocity(one_r) == g0);
  CHECK(spin_vector(one_r) == 0.5 * g3);
  CHECK(spin_bivector(one_r) == 0.5 * Isigma3);
  const Rotor L = boost_rotor({0, 0, 0.8});
  CHECK(dist(velocity(L), std::cosh(0.8) * g0 - std::sinh(0.8) * g3) < 1e-14);
}

TEST_CASE("observable invariants on random rotors") {
  Rng rng;
  for (int i = 0; i < 1000; ++i) {
    const Rotor R = rng.rotor();
    const Multivector v = velocity(R), s = spin_vector(R), S = spin_bivector(R);
    CHECK(dist(v * v, one) < 1e-10);
    CHECK(std::abs(scalar_product(s, v)) < 1e-10);
    CHECK(dist(S, I * s * v) < 1e-10);
    CHECK(scalar_part(S * S) == doctest::Approx(-0.25).epsilon(1e-10));
  }
}

TEST_CASE("ray invariance of observables") {
  Rng rng;
  for (int i = 0; i < 100; ++i) {
    const Multivector psi = compose({rng(0.5, 2), rng(-3, 3), rng.rotor()}).value();
    const Multivector shifted = psi * phase(rng(-3, 3));
    const auto a = polar_decompose(Spinor(psi));
    const auto b = polar_decompose(Spinor(shifted));
    CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-12));
    CHECK(std::abs(a.beta - b.beta) < 1e-12);
    CHECK(dist(velocity(a.rotor), velocity(b.rotor)) < 1e-12);
    CHECK(dist(spin_vector(a.rotor), spin_vector(b.rotor)) < 1e-12);
    CHECK(dist(spin_bivector(a.rotor), spin_bivector(b.rotor)) < 1e-12);
  }
}

TEST_CASE("angular velocity of a uniform spin") {
  for (double omega : {0.5, 1.0, 3.0}) {
    const Multivector W = angular_velocity(spin_about_s3(omega), 0.4);
    CHECK(dist(W, -omega * Isigma3) < 1e-9);
  }
  const RotorCurve constant{[](double) { return euler_rotor({0.2, 0.3, 0.4}).value(); }, {}, 0.0, 1.0};
  CHECK(angular_velocity(constant, 0.5).max_abs() < 1e-12);
}

TEST_CASE("central difference error falls by four per halving") {
  const RotorCurve c = spin_about_s3(2.0);
  const Multivector exact = -Isigma3 * exp_bivector(-Isigma3 * 0.3);  // dR/dt at t = 0.3
  const double e1 = (finite_difference_rotor(c, 0.3, 1e-2) - exact).max_abs();
  const double e2 = (finite_difference_rotor(c, 0.3, 5e-3) - exact).max_abs();
  const double ratio = e1 / e2;
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("derivative errors") {
  const RotorCurve c = spin_about_s3(1.0);
  CHECK_THROWS_AS(finite_difference_rotor(c, 9.9999, 1e-3), RangeError);
  CHECK_THROWS_AS(finite_difference_rotor(c, 0.0, 0.0), RangeError);
  const RotorCurve edge{c.value, {}, 0.0, 1.0};
  CHECK_THROWS_AS(angular_velocity(edge, 0.0), RangeError);

  // square-root cusp: one-sided slope is unbounded
  const RotorCurve cusp{[](double t) { return exp_bivector(-Isigma3 * std::sqrt(std::max(t, 0.0))); }, {}, -1.0, 1.0};
  CHECK_THROWS_AS(angular_velocity(cusp, 0.0), NumericalDerivativeError);
}

TEST_CASE("constant unit spinor kinematics") {
  const FunctionTrajectory traj(1.0, [](double) { return one; }, [](double) { return Multivector{}; });
  const Kinematics k = kinematics_at(traj, 0.5);
  CHECK(dist(k.v, g0) < 1e-15);
  CHECK(dist(k.s, 0.5 * g3) < 1e-15);
  CHECK(dist(k.S, 0.5 * Isigma3) < 1e-15);
  CHECK(k.varrho == doctest::Approx(1.0));
  CHECK(k.rho == doctest::Approx(1.0));
  CHECK(k.omega0_full.max_abs() < 1e-15);
  CHECK(k.omega0_path.max_abs() < 1e-15);
}

TEST_CASE("frame route and extraction route agree") {
  Rng rng;
  for (int i = 0; i < 100; ++i) {
    const EulerTrajectory traj(rng.trajectory(), 2.0);
    const double t = rng(0.0, 2.0);
    const Kinematics a = kinematics_from_frame(*traj.frame(t));
    const Kinematics b = kinematics_from_spinor(traj.psi(t), *traj.psi_dot(t));
    CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-10));
    CHECK(a.rho_dot == doctest::Approx(b.rho_dot).epsilon(1e-9));
    CHECK(std::abs(wrap_angle(a.beta - b.beta)) < 1e-10);
    CHECK(a.beta_dot == doctest::Approx(b.beta_dot).epsilon(1e-9));
    CHECK(dist(a.v, b.v) < 1e-10);
    CHECK(dist(a.S, b.S) < 1e-10);
    CHECK(dist(a.S_dot, b.S_dot) < 1e-9);
    CHECK(dist(a.omega0_full, b.omega0_full) < 1e-9);
    CHECK(dist(a.omega0_path, b.omega0_path) < 1e-9);
    CHECK(a.chi_dot == doctest::Approx(b.chi_dot).epsilon(1e-9));
  }
}

TEST_CASE("boosted trajectory invariants") {
  ScenarioSpec spec{BoostedPrecession{0.7, kPi / 3, 0.0, 0.5}, 3.0, 100};
  const auto traj = make_trajectory(spec);
  for (double t = 0.0; t <= 3.0; t += 0.25) {
    const Kinematics k = kinematics_at(*traj, t);
    CHECK(dist(k.v * k.v, one) < 1e-8);
    CHECK(std::abs(scalar_product(k.s, k.v)) < 1e-8);
    CHECK(dist(k.S, I * k.s * k.v) < 1e-8);
    CHECK(scalar_part(k.S * k.S) == doctest::Approx(-0.25).epsilon(1e-8));
    CHECK(k.varrho == doctest::Approx(k.rho * std::cosh(0.7)).epsilon(1e-12));
  }
}

TEST_CASE("numerical route without an analytic derivative") {
  Rng rng;
  const auto series = rng.trajectory();
  const auto exact = std::make_shared<EulerTrajectory>(series, 2.0);
  const FunctionTrajectory bare(2.0, [exact](double t) { return exact->psi(t); });
  const Kinematics a = kinematics_at(*exact, 0.8);
  const Kinematics b = kinematics_at(bare, 0.8);
  CHECK(a.beta_dot == doctest::Approx(b.beta_dot).epsilon(1e-7));
  CHECK(dist(a.omega0_full, b.omega0_full) < 1e-7);
  CHECK(beta_rate_central(*exact, 0.8, 1e-5) == doctest::Approx(a.beta_dot).epsilon(1e-7));
}

TEST_CASE("zero density is rejected") {
  FrameSample f;
  f.rho = 0.0;
  CHECK_THROWS_AS(kinematics_from_frame(f), DegenerateSpinorError);
  f.rho = std::nan("");
  CHECK_THROWS_AS(kinematics_from_frame(f), DegenerateSpinorError);
}
