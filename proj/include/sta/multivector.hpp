#pragma once

// Real geometric algebra of Minkowski spacetime, Cl(1,3), signature (+,-,-,-).
//
// A multivector is stored as 16 coefficients indexed by a 4-bit blade mask
// over the generators (g0, g1, g2, g3). Bit k set means g_k is a factor; the
// factors of a blade are always kept in ascending generator order, so mask
// 0b0011 is g0 g1 and mask 0b1111 is the pseudoscalar I = g0 g1 g2 g3.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>

namespace sta {

inline constexpr int kBladeCount = 16;
inline constexpr int kMaxGrade = 4;

struct Blade {
  std::uint8_t mask = 0;

  constexpr int grade() const noexcept { return std::popcount(static_cast<unsigned>(mask)); }
  constexpr bool operator==(const Blade&) const = default;
};

// Metric g_mu_mu on the generators.
constexpr double metric(int generator) noexcept { return generator == 0 ? 1.0 : -1.0; }

struct CayleyEntry {
  std::uint8_t target = 0;
  std::int8_t sign = 1;

  constexpr bool operator==(const CayleyEntry&) const = default;
};

using CayleyTable = std::array<std::array<CayleyEntry, kBladeCount>, kBladeCount>;

// Product of two canonical blades: the target blade is a ^ b, the sign counts
// the transpositions needed to bring the factors into ascending order and
// includes the metric factor of every generator that is contracted away.
constexpr CayleyEntry blade_product(std::uint8_t a, std::uint8_t b) noexcept {
  int swaps = 0;
  for (int j = 0; j < 4; ++j) {
    if ((b >> j) & 1u) {
      swaps += std::popcount(static_cast<unsigned>(a >> (j + 1)));
    }
  }
  double sign = (swaps % 2 == 0) ? 1.0 : -1.0;
  const unsigned common = a & b;
  for (int g = 0; g < 4; ++g) {
    if ((common >> g) & 1u) sign *= metric(g);
  }
  return {static_cast<std::uint8_t>(a ^ b), static_cast<std::int8_t>(sign > 0 ? 1 : -1)};
}

constexpr CayleyTable build_cayley_table() noexcept {
  CayleyTable table{};
  for (int a = 0; a < kBladeCount; ++a) {
    for (int b = 0; b < kBladeCount; ++b) {
      table[a][b] = blade_product(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    }
  }
  return table;
}

inline constexpr CayleyTable kCayleyTable = build_cayley_table();

class Multivector {
 public:
  constexpr Multivector() = default;
  constexpr explicit Multivector(double scalar) { c_[0] = scalar; }
  constexpr explicit Multivector(const std::array<double, kBladeCount>& coeffs) : c_(coeffs) {}

  static constexpr Multivector blade(Blade b, double coeff = 1.0) {
    Multivector m;
    m.c_[b.mask] = coeff;
    return m;
  }

  // x^mu gamma_mu with lower-index generators.
  static constexpr Multivector vector(double x0, double x1, double x2, double x3) {
    Multivector m;
    m.c_[0b0001] = x0;
    m.c_[0b0010] = x1;
    m.c_[0b0100] = x2;
    m.c_[0b1000] = x3;
    return m;
  }

  constexpr double operator[](int mask) const { return c_[mask]; }
  constexpr double& operator[](int mask) { return c_[mask]; }
  constexpr double operator[](Blade b) const { return c_[b.mask]; }
  constexpr double& operator[](Blade b) { return c_[b.mask]; }

  constexpr const std::array<double, kBladeCount>& coeffs() const noexcept { return c_; }
  std::span<const double, kBladeCount> span() const noexcept { return c_; }

  constexpr Multivector& operator+=(const Multivector& o) {
    for (int i = 0; i < kBladeCount; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr Multivector& operator-=(const Multivector& o) {
    for (int i = 0; i < kBladeCount; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr Multivector& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  constexpr Multivector& operator/=(double s) {
    for (auto& x : c_) x /= s;
    return *this;
  }

  friend constexpr Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend constexpr Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend constexpr Multivector operator*(Multivector a, double s) { return a *= s; }
  friend constexpr Multivector operator*(double s, Multivector a) { return a *= s; }
  friend constexpr Multivector operator/(Multivector a, double s) { return a /= s; }
  friend constexpr Multivector operator-(Multivector a) { return a *= -1.0; }
  friend constexpr bool operator==(const Multivector&, const Multivector&) = default;

  // Euclidean length of the coefficient array (not the algebra's quadratic form).
  double norm() const;
  double max_abs() const;

  constexpr bool has_grade(int k, double tol = 0.0) const {
    for (int i = 0; i < kBladeCount; ++i) {
      if (Blade{static_cast<std::uint8_t>(i)}.grade() == k && (c_[i] > tol || c_[i] < -tol)) return true;
    }
    return false;
  }
  constexpr bool is_even(double tol = 0.0) const { return !has_grade(1, tol) && !has_grade(3, tol); }

 private:
  std::array<double, kBladeCount> c_{};
};

constexpr Multivector product_with_table(const CayleyTable& table, const Multivector& a,
                                         const Multivector& b) {
  Multivector out;
  for (int i = 0; i < kBladeCount; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < kBladeCount; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      const CayleyEntry e = table[i][j];
      out[e.target] += e.sign * ai * bj;
    }
  }
  return out;
}

constexpr Multivector geometric_product(const Multivector& a, const Multivector& b) {
  return product_with_table(kCayleyTable, a, b);
}

constexpr Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

// Generalised inner product: sum over homogeneous parts of <A_r B_s>_{|r-s|}.
// Reduces to (ab + ba)/2 for vectors and to <ab>_0 for two bivectors.
Multivector inner_product(const Multivector& a, const Multivector& b);

// Sum over homogeneous parts of <A_r B_s>_{r+s}.
Multivector outer_product(const Multivector& a, const Multivector& b);

// <c>_k. Throws DomainError for k outside 0..4.
Multivector grade_projection(const Multivector& c, int k);

constexpr double scalar_part(const Multivector& c) { return c[0]; }
constexpr double pseudoscalar_part(const Multivector& c) { return c[0b1111]; }

// Grade-k coefficients scaled by (-1)^{k(k-1)/2}.
constexpr Multivector reversion(const Multivector& c) {
  Multivector out = c;
  for (int i = 0; i < kBladeCount; ++i) {
    const int k = Blade{static_cast<std::uint8_t>(i)}.grade();
    if (k == 2 || k == 3) out[i] = -out[i];
  }
  return out;
}

// Shorthand for <a b>_0.
constexpr double scalar_product(const Multivector& a, const Multivector& b) {
  double s = 0.0;
  for (int i = 0; i < kBladeCount; ++i) {
    const CayleyEntry e = kCayleyTable[i][i];
    s += e.sign * a[i] * b[i];
  }
  return s;
}

namespace basis {
inline constexpr Multivector one{1.0};
inline constexpr Multivector g0 = Multivector::blade({0b0001});
inline constexpr Multivector g1 = Multivector::blade({0b0010});
inline constexpr Multivector g2 = Multivector::blade({0b0100});
inline constexpr Multivector g3 = Multivector::blade({0b1000});
inline constexpr Multivector I = Multivector::blade({0b1111});

// Relative vectors of the g0 frame: sigma_n = g_n g0.
inline constexpr Multivector sigma1 = g1 * g0;
inline constexpr Multivector sigma2 = g2 * g0;
inline constexpr Multivector sigma3 = g3 * g0;
inline constexpr Multivector Isigma1 = I * sigma1;
inline constexpr Multivector Isigma2 = I * sigma2;
inline constexpr Multivector Isigma3 = I * sigma3;

inline constexpr std::array<Multivector, 4> gamma{g0, g1, g2, g3};
inline constexpr std::array<Multivector, 3> sigma{sigma1, sigma2, sigma3};
inline constexpr std::array<Multivector, 3> Isigma{Isigma1, Isigma2, Isigma3};
}  // namespace basis

// Dagger in the g0 frame: g0 rev(psi) g0.
constexpr Multivector hermitian_adjoint(const Multivector& psi) {
  return basis::g0 * reversion(psi) * basis::g0;
}

// Coordinates of an even multivector in the Pauli basis {1, sigma_n, I sigma_n, I}.
struct PauliCoords {
  double scalar = 0.0;
  std::array<double, 3> vector{};
  std::array<double, 3> bivector{};
  double trivector = 0.0;

  bool operator==(const PauliCoords&) const = default;
};

// Relabels an even multivector; throws DomainError on odd-grade input.
PauliCoords pauli_view(const Multivector& c);
Multivector from_pauli(const PauliCoords& p);
// Reversion of the Pauli algebra (sigma_n are its vectors, I its trivector).
PauliCoords pauli_reversion(const PauliCoords& p);

// "+e0", "-e3", ... ; 16 rows of 16 space-separated entries.
std::string format_cayley_table(const CayleyTable& table);

std::string to_string(const Multivector& m);

}  // namespace sta
