#include "sta/multivector.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sta/errors.hpp"

namespace sta {

double Multivector::norm() const {
  double s = 0.0;
  for (double x : c_) s += x * x;
  return std::sqrt(s);
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

namespace {

template <typename Keep>
Multivector graded_product(const Multivector& a, const Multivector& b, Keep keep) {
  Multivector out;
  for (int i = 0; i < kBladeCount; ++i) {
    if (a[i] == 0.0) continue;
    const int r = Blade{static_cast<std::uint8_t>(i)}.grade();
    for (int j = 0; j < kBladeCount; ++j) {
      if (b[j] == 0.0) continue;
      const int s = Blade{static_cast<std::uint8_t>(j)}.grade();
      const CayleyEntry e = kCayleyTable[i][j];
      if (!keep(r, s, Blade{e.target}.grade())) continue;
      out[e.target] += e.sign * a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

Multivector inner_product(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, [](int r, int s, int g) { return g == std::abs(r - s); });
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, [](int r, int s, int g) { return g == r + s; });
}

Multivector grade_projection(const Multivector& c, int k) {
  if (k < 0 || k > kMaxGrade) {
    throw DomainError("grade_projection: grade " + std::to_string(k) + " outside 0..4");
  }
  Multivector out;
  for (int i = 0; i < kBladeCount; ++i) {
    if (Blade{static_cast<std::uint8_t>(i)}.grade() == k) out[i] = c[i];
  }
  return out;
}

namespace {

// Each Pauli basis element is +-1 times a single canonical blade.
struct SignedBlade {
  int mask;
  double sign;
};

SignedBlade locate(const Multivector& e) {
  for (int i = 0; i < kBladeCount; ++i) {
    if (e[i] != 0.0) return {i, e[i]};
  }
  return {0, 0.0};
}

}  // namespace

PauliCoords pauli_view(const Multivector& c) {
  if (!c.is_even()) throw DomainError("pauli_view: input has odd-grade components");
  PauliCoords p;
  p.scalar = c[0];
  for (int n = 0; n < 3; ++n) {
    const SignedBlade v = locate(basis::sigma[n]);
    const SignedBlade b = locate(basis::Isigma[n]);
    p.vector[n] = c[v.mask] * v.sign;
    p.bivector[n] = c[b.mask] * b.sign;
  }
  p.trivector = c[0b1111];
  return p;
}

Multivector from_pauli(const PauliCoords& p) {
  Multivector m{p.scalar};
  for (int n = 0; n < 3; ++n) {
    m += p.vector[n] * basis::sigma[n];
    m += p.bivector[n] * basis::Isigma[n];
  }
  m += p.trivector * basis::I;
  return m;
}

PauliCoords pauli_reversion(const PauliCoords& p) {
  PauliCoords out = p;
  for (auto& x : out.bivector) x = -x;
  out.trivector = -out.trivector;
  return out;
}

std::string format_cayley_table(const CayleyTable& table) {
  std::string out;
  char buf[8];
  for (int a = 0; a < kBladeCount; ++a) {
    for (int b = 0; b < kBladeCount; ++b) {
      const CayleyEntry e = table[a][b];
      std::snprintf(buf, sizeof buf, "%ce%x", e.sign > 0 ? '+' : '-', e.target);
      if (b > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string to_string(const Multivector& m) {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (int i = 0; i < kBladeCount; ++i) {
    if (m[i] == 0.0) continue;
    if (!first) os << " + ";
    os << m[i];
    if (i != 0) {
      os << "*e";
      for (int g = 0; g < 4; ++g) {
        if ((i >> g) & 1) os << g;
      }
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace sta
