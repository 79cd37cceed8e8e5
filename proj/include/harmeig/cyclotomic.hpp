#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta), zeta = exp(2*pi*i/24).
//
// Elements are stored on the power basis 1, zeta, ..., zeta^7 modulo the
// 24th cyclotomic polynomial x^8 - x^4 + 1, so zeta^8 = zeta^4 - 1.
// The field contains i = zeta^6, sqrt(2) = zeta^3 + zeta^21,
// sqrt(3) = zeta^2 + zeta^22, their products, and all 24th roots of unity,
// which is every scalar produced by the representation machinery here.

#include "harmeig/rational.hpp"

#include <array>
#include <complex>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace harmeig {

class Cyc {
 public:
  static constexpr int kDeg = 8;

  Cyc() = default;
  explicit Cyc(const Rat& r) { c_[0] = r; }
  explicit Cyc(long v) { c_[0] = v; }

  static Cyc zero() { return Cyc(); }
  static Cyc one() { return Cyc(Rat(1)); }
  static Cyc from_rat(const Rat& r) { return Cyc(r); }

  // zeta^k for any integer k (reduced mod 24, then mod x^8 - x^4 + 1).
  static Cyc zeta_pow(long k) {
    long e = ((k % 24) + 24) % 24;
    std::array<Rat, 24> t{};
    t[e] = 1;
    for (int j = 23; j >= kDeg; --j) {
      if (t[j] == 0) continue;
      t[j - 4] += t[j];
      t[j - 8] -= t[j];
      t[j] = 0;
    }
    Cyc r;
    for (int j = 0; j < kDeg; ++j) r.c_[j] = t[j];
    return r;
  }

  static Cyc i() { return zeta_pow(6); }
  static Cyc sqrt2() { return zeta_pow(3) + zeta_pow(21); }
  static Cyc sqrt3() { return zeta_pow(2) + zeta_pow(22); }
  static Cyc sqrt6() { return sqrt2() * sqrt3(); }

  const Rat& coeff(int j) const { return c_.at(j); }
  Rat& coeff(int j) { return c_.at(j); }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (int j = 1; j < kDeg; ++j)
      if (c_[j] != 0) return false;
    return true;
  }

  // Rational value; requires is_rational().
  Rat rational_value() const {
    if (!is_rational()) throw std::domain_error("Cyc: not a rational value");
    return c_[0];
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    Cyc r;
    for (int j = 0; j < kDeg; ++j) r.c_[j] = a.c_[j] + b.c_[j];
    return r;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) {
    Cyc r;
    for (int j = 0; j < kDeg; ++j) r.c_[j] = a.c_[j] - b.c_[j];
    return r;
  }
  friend Cyc operator-(const Cyc& a) {
    Cyc r;
    for (int j = 0; j < kDeg; ++j) r.c_[j] = -a.c_[j];
    return r;
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    std::array<Rat, 16> t{};
    for (int j = 0; j < kDeg; ++j) {
      if (a.c_[j] == 0) continue;
      for (int k = 0; k < kDeg; ++k) {
        if (b.c_[k] == 0) continue;
        t[j + k] += a.c_[j] * b.c_[k];
      }
    }
    reduce16(t);
    Cyc r;
    for (int j = 0; j < kDeg; ++j) r.c_[j] = t[j];
    return r;
  }
  Cyc& operator+=(const Cyc& b) { return *this = *this + b; }
  Cyc& operator-=(const Cyc& b) { return *this = *this - b; }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }

  friend bool operator==(const Cyc& a, const Cyc& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  friend Cyc operator*(const Rat& s, const Cyc& a) {
    Cyc r;
    for (int j = 0; j < kDeg; ++j) r.c_[j] = s * a.c_[j];
    return r;
  }

  Cyc inv() const;

  // Complex conjugation zeta -> zeta^{-1}; a ring automorphism fixing Q.
  Cyc conj() const {
    Cyc r;
    for (int j = 0; j < kDeg; ++j) {
      if (c_[j] == 0) continue;
      r += c_[j] * zeta_pow(-j);
    }
    return r;
  }

  bool is_real() const { return *this == conj(); }

  std::complex<double> to_float() const {
    static const std::array<std::complex<double>, kDeg> basis = [] {
      std::array<std::complex<double>, kDeg> b{};
      constexpr double kTau = 6.283185307179586476925286766559;
      for (int j = 0; j < kDeg; ++j)
        b[j] = std::polar(1.0, kTau * j / 24.0);
      return b;
    }();
    std::complex<double> acc = 0.0;
    for (int j = 0; j < kDeg; ++j)
      if (c_[j] != 0) acc += rat_to_double(c_[j]) * basis[j];
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyc& a) {
    bool first = true;
    for (int j = 0; j < kDeg; ++j) {
      if (a.c_[j] == 0) continue;
      if (!first) os << " + ";
      os << "(" << rat_to_string(a.c_[j]) << ")";
      if (j > 0) os << "*z^" << j;
      first = false;
    }
    if (first) os << "0";
    return os;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

 private:
  // Reduce a degree-<=15 coefficient vector modulo x^8 = x^4 - 1.
  static void reduce16(std::array<Rat, 16>& t) {
    for (int k = 15; k >= kDeg; --k) {
      if (t[k] == 0) continue;
      t[k - 4] += t[k];
      t[k - 8] -= t[k];
      t[k] = 0;
    }
  }

  std::array<Rat, kDeg> c_{};
};

// Multiplicative inverse via the 8x8 rational linear system
// (multiplication-by-*this matrix) x = e_0. Errors on zero.
inline Cyc Cyc::inv() const {
  if (is_zero()) throw std::domain_error("Cyc::inv: zero has no inverse");
  constexpr int n = kDeg;
  // aug = [M | e0], M[:,j] = coefficients of (*this) * zeta^j
  std::array<std::array<Rat, n + 1>, n> aug{};
  for (int j = 0; j < n; ++j) {
    Cyc col = *this * zeta_pow(j);
    for (int r = 0; r < n; ++r) aug[r][j] = col.coeff(r);
  }
  aug[0][n] = 1;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (aug[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(aug[row], aug[piv]);
    Rat inv_p = Rat(1) / aug[row][col];
    for (int k = col; k <= n; ++k) aug[row][k] *= inv_p;
    for (int r = 0; r < n; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rat f = aug[r][col];
      for (int k = col; k <= n; ++k) aug[r][k] -= f * aug[row][k];
    }
    ++row;
  }
  if (row < n) throw std::domain_error("Cyc::inv: singular multiplication matrix");
  Cyc x;
  for (int j = 0; j < n; ++j) x.coeff(j) = aug[j][n];
  return x;
}

inline Cyc cyc_div(const Cyc& a, const Cyc& b) { return a * b.inv(); }

}  // namespace harmeig
