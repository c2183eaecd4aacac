#include "sta/matrix_bridge.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sta/errors.hpp"
#include "sta/spinor.hpp"

namespace sta {

using namespace basis;

namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix4 block(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b, const Eigen::Matrix2cd& c,
                     const Eigen::Matrix2cd& d) {
  ComplexMatrix4 m;
  m << a, b, c, d;
  return m;
}

}  // namespace

GammaRep::GammaRep() {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd zero = Eigen::Matrix2cd::Zero();
  std::array<Eigen::Matrix2cd, 3> pauli;
  pauli[0] << 0, 1, 1, 0;
  pauli[1] << 0, -kI, kI, 0;
  pauli[2] << 1, 0, 0, -1;

  upper_[0] = block(id, zero, zero, -id);
  for (int k = 0; k < 3; ++k) upper_[k + 1] = block(zero, pauli[k], -pauli[k], zero);
  for (int mu = 0; mu < 4; ++mu) lower_[mu] = metric(mu) * upper_[mu];
  gamma5_ = kI * upper_[0] * upper_[1] * upper_[2] * upper_[3];
}

const GammaRep& GammaRep::standard() {
  static const GammaRep rep;
  return rep;
}

ComplexMatrix4 GammaRep::image(Blade b) const {
  ComplexMatrix4 m = ComplexMatrix4::Identity();
  for (int g = 0; g < 4; ++g) {
    if ((b.mask >> g) & 1u) m = m * lower_[g];
  }
  return m;
}

ComplexMatrix4 GammaRep::image(const Multivector& mv) const {
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  for (int i = 0; i < kBladeCount; ++i) {
    if (mv[i] != 0.0) m += mv[i] * image(Blade{static_cast<std::uint8_t>(i)});
  }
  return m;
}

namespace {

using Real8 = Eigen::Matrix<double, 8, 1>;
using Real8x8 = Eigen::Matrix<double, 8, 8>;

Real8 flatten(const ComplexSpinor4& v) {
  Real8 out;
  for (int i = 0; i < 4; ++i) {
    out(2 * i) = v(i).real();
    out(2 * i + 1) = v(i).imag();
  }
  return out;
}

ComplexSpinor4 unflatten(const Real8& v) {
  ComplexSpinor4 out;
  for (int i = 0; i < 4; ++i) out(i) = Complex(v(2 * i), v(2 * i + 1));
  return out;
}

// Column j is the image of the j-th even blade: gamma(B) e1.
struct SpinorMap {
  Real8x8 forward;
  Real8x8 inverse;

  SpinorMap() {
    const GammaRep& rep = GammaRep::standard();
    ComplexSpinor4 e1 = ComplexSpinor4::Zero();
    e1(0) = 1.0;
    for (int j = 0; j < 8; ++j) {
      const auto mask = static_cast<std::uint8_t>(kEvenBlades[j]);
      forward.col(j) = flatten(rep.image(Blade{mask}) * e1);
    }
    Eigen::FullPivLU<Real8x8> lu(forward);
    if (!lu.isInvertible()) throw std::logic_error("spinor map is not invertible");
    inverse = lu.inverse();
  }

  static const SpinorMap& get() {
    static const SpinorMap map;
    return map;
  }
};

}  // namespace

ComplexSpinor4 to_matrix_spinor(const Multivector& psi) {
  Real8 coords;
  for (int j = 0; j < 8; ++j) coords(j) = psi[kEvenBlades[j]];
  return unflatten(SpinorMap::get().forward * coords);
}

Multivector from_matrix_spinor(const ComplexSpinor4& psi) {
  const Real8 coords = SpinorMap::get().inverse * flatten(psi);
  Multivector out;
  for (int j = 0; j < 8; ++j) out[kEvenBlades[j]] = coords(j);
  return out;
}

Amplitude amplitude_hermitian(const Multivector& psi, const Multivector& phi) {
  const Multivector dagger = g0 * reversion(psi) * g0;
  return {scalar_part(phi * dagger), -scalar_part(phi * Isigma3 * dagger)};
}

Amplitude amplitude_dirac(const Multivector& psi, const Multivector& phi) {
  const Multivector bar = reversion(psi);
  return {scalar_part(phi * bar), -scalar_part(phi * Isigma3 * bar)};
}

Complex hermitian_product(const ComplexSpinor4& psi, const ComplexSpinor4& phi) {
  return psi.adjoint() * phi;
}

Complex dirac_product(const ComplexSpinor4& psi, const ComplexSpinor4& phi) {
  return psi.adjoint() * GammaRep::standard().upper(0) * phi;
}

ComplexSpinor4 chiral_transform(const ComplexSpinor4& psi, double beta) {
  const ComplexMatrix4& g5 = GammaRep::standard().gamma5();
  return std::cos(beta / 2) * psi + (kI * std::sin(beta / 2)) * (g5 * psi);
}

MatrixPolar matrix_density_and_chiral_angle(const ComplexSpinor4& psi) {
  const ComplexMatrix4& g5 = GammaRep::standard().gamma5();
  const double c = dirac_product(psi, psi).real();
  const double s = -dirac_product(psi, kI * (g5 * psi)).real();
  double beta = std::atan2(s, c);
  if (beta <= -std::numbers::pi) beta = std::numbers::pi;
  return {std::hypot(c, s), beta};
}

ComplexSpinor4 extract_matrix_rotor(const ComplexSpinor4& psi) {
  const MatrixPolar p = matrix_density_and_chiral_angle(psi);
  if (p.rho <= kDensityEpsilon) {
    throw DegenerateSpinorError("extract_matrix_rotor: density below threshold");
  }
  return chiral_transform(psi, -p.beta) / std::sqrt(p.rho);
}

double matrix_phase_rate(const ComplexSpinor4& r, const ComplexSpinor4& r_dot) {
  const Complex norm = dirac_product(r, r);
  if (std::abs(norm - 1.0) > 1e-8) {
    throw ContractViolation("matrix_phase_rate: R-bar R differs from 1");
  }
  return dirac_product(r, r_dot).imag();
}

Multivector dirac_residual(const SpinorField& field, const Multivector& potential, double charge,
                           double mass, const SpacetimePoint& x) {
  const Multivector psi = field.value(x);
  Multivector box_psi;
  for (int mu = 0; mu < 4; ++mu) {
    // g^0 = g0, g^k = -g_k
    box_psi += metric(mu) * (gamma[mu] * field.partial(mu, x));
  }
  return box_psi * Isigma3 - charge * (potential * psi) - mass * (psi * g0);
}

}  // namespace sta
