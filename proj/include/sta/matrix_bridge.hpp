#pragma once

// The conventional complex 4-spinor picture, used as an independent oracle
// for the spacetime-algebra code.
//
// Representation: Dirac-Pauli. The textbook matrices are the upper-index
// gamma^mu; gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3 = [[0,1],[1,0]].
// The lower-index matrices gamma_mu = g_mu_nu gamma^nu represent the
// generators g_mu. The spinor map psi <-> Psi is fixed by
//   gamma_mu Psi <-> g_mu psi g0,   i Psi <-> psi I s3,   1 <-> (1,0,0,0)^T,
// which also gives gamma5 Psi <-> psi s3 and i gamma5 Psi <-> I psi.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "sta/multivector.hpp"
#include "sta/trajectory.hpp"

namespace sta {

using Complex = std::complex<double>;
using ComplexSpinor4 = Eigen::Vector4cd;
using ComplexMatrix4 = Eigen::Matrix4cd;

// Complex number returned as a (re, im) pair.
struct Amplitude {
  double re = 0.0;
  double im = 0.0;
};

class GammaRep {
 public:
  static const GammaRep& standard();

  const ComplexMatrix4& upper(int mu) const { return upper_[mu]; }
  const ComplexMatrix4& lower(int mu) const { return lower_[mu]; }
  const ComplexMatrix4& gamma5() const { return gamma5_; }

  // Matrix image of a canonical blade: ordered product of lower-index matrices.
  ComplexMatrix4 image(Blade b) const;
  // Real-linear extension to a general multivector.
  ComplexMatrix4 image(const Multivector& m) const;

 private:
  GammaRep();
  std::array<ComplexMatrix4, 4> upper_;
  std::array<ComplexMatrix4, 4> lower_;
  ComplexMatrix4 gamma5_;
};

// Even-multivector coordinates used by the spinor bijection, in blade-mask
// order: 1, g0g1, g0g2, g1g2, g0g3, g1g3, g2g3, I.
inline constexpr std::array<int, 8> kEvenBlades{0b0000, 0b0011, 0b0101, 0b0110,
                                                0b1001, 0b1010, 0b1100, 0b1111};

ComplexSpinor4 to_matrix_spinor(const Multivector& psi);
Multivector from_matrix_spinor(const ComplexSpinor4& psi);

// Psi^dagger Phi from the spacetime-algebra formula <phi g0 rev(psi) g0> - ...
Amplitude amplitude_hermitian(const Multivector& psi, const Multivector& phi);
// Psi-bar Phi from <phi rev(psi)> - ...
Amplitude amplitude_dirac(const Multivector& psi, const Multivector& phi);

// Matrix-side counterparts.
Complex hermitian_product(const ComplexSpinor4& psi, const ComplexSpinor4& phi);  // Psi^dagger Phi
Complex dirac_product(const ComplexSpinor4& psi, const ComplexSpinor4& phi);      // Psi-bar Phi

// exp(i gamma5 beta/2) Psi.
ComplexSpinor4 chiral_transform(const ComplexSpinor4& psi, double beta);

struct MatrixPolar {
  double rho = 0.0;
  double beta = 0.0;
};

// rho cos(beta) = Psi-bar Psi, rho sin(beta) = -Psi-bar i gamma5 Psi.
MatrixPolar matrix_density_and_chiral_angle(const ComplexSpinor4& psi);

// exp(-i gamma5 beta/2) Psi / sqrt(rho). Throws DegenerateSpinorError for rho ~ 0.
ComplexSpinor4 extract_matrix_rotor(const ComplexSpinor4& psi);

// Im(R-bar dR/dt). Throws ContractViolation when |R-bar R - 1| > 1e-8.
double matrix_phase_rate(const ComplexSpinor4& r, const ComplexSpinor4& r_dot);

// box psi I s3 - e A psi - m psi g0 with box = g^mu d_mu.
Multivector dirac_residual(const SpinorField& field, const Multivector& potential, double charge,
                           double mass, const SpacetimePoint& x);

}  // namespace sta
