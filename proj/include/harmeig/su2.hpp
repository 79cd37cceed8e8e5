#pragma once

// SU(2) and its irreducible representations on homogeneous polynomials.
//
// Group elements are ((a, -conj b), (b, conj a)) with |a|^2 + |b|^2 = 1.
// The Lie algebra basis is
//   E1 = ((0, 1), (-1, 0)), E2 = ((0, i), (i, 0)), E3 = ((i, 0), (0, -i)),
// satisfying [E1, E2] = 2 E3, [E2, E3] = 2 E1, [E3, E1] = 2 E2.
//
// V_n = degree-n homogeneous polynomials in z1, z2; the monomial basis is
// m_k = z1^{n-k} z2^k, k = 0..n. The group acts by right substitution
// (rho(g) f)(z) = f(z * g), and m_k / sqrt(k! (n-k)!) is unitary for the
// invariant pairing (linear in the first slot, conjugate-linear in the
// second). All matrices below are written on the monomial basis, where every
// entry stays in the cyclotomic field.

#include "harmeig/cyclotomic.hpp"
#include "harmeig/linalg.hpp"
#include "harmeig/rational.hpp"

#include <stdexcept>
#include <vector>

namespace harmeig {

enum class LieElem { E1, E2, E3 };

struct SU2Elem {
  Cyc a, b;

  static SU2Elem identity() { return {Cyc::one(), Cyc::zero()}; }

  bool is_valid() const {
    return (a * a.conj() + b * b.conj()) == Cyc::one();
  }

  friend SU2Elem operator*(const SU2Elem& x, const SU2Elem& y) {
    return {x.a * y.a - x.b.conj() * y.b, x.b * y.a + x.a.conj() * y.b};
  }

  SU2Elem inverse() const { return {a.conj(), -b}; }

  friend bool operator==(const SU2Elem& x, const SU2Elem& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const SU2Elem& x, const SU2Elem& y) { return !(x == y); }

  Mat mat2() const {
    Mat m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = -b.conj();
    m.at(1, 0) = b;
    m.at(1, 1) = a.conj();
    return m;
  }
};

// diag(w, conj w) for |w| = 1; rejects non-unit w.
inline SU2Elem su2_diag(const Cyc& w) {
  SU2Elem g{w, Cyc::zero()};
  if (!g.is_valid()) throw std::domain_error("su2_diag: |w| != 1");
  return g;
}

inline Mat lie_mat2(LieElem x) {
  Mat m(2, 2);
  switch (x) {
    case LieElem::E1:
      m.at(0, 1) = Cyc::one();
      m.at(1, 0) = -Cyc::one();
      break;
    case LieElem::E2:
      m.at(0, 1) = Cyc::i();
      m.at(1, 0) = Cyc::i();
      break;
    case LieElem::E3:
      m.at(0, 0) = Cyc::i();
      m.at(1, 1) = -Cyc::i();
      break;
  }
  return m;
}

// Derived representation on V_n, monomial basis:
//   drho(E3) m_k = i (n - 2k) m_k
//   drho(E1) m_k = -(n-k) m_{k+1} + k m_{k-1}
//   drho(E2) m_k = i (n-k) m_{k+1} + i k m_{k-1}
inline Mat drho(int n, LieElem x) {
  if (n < 0) throw std::domain_error("drho: n < 0");
  Mat m(n + 1, n + 1);
  const Cyc i = Cyc::i();
  for (int k = 0; k <= n; ++k) {
    switch (x) {
      case LieElem::E3:
        m.at(k, k) = Rat(n - 2 * k) * i;
        break;
      case LieElem::E1:
        if (k + 1 <= n) m.at(k + 1, k) = Cyc(Rat(-(n - k)));
        if (k - 1 >= 0) m.at(k - 1, k) = Cyc(Rat(k));
        break;
      case LieElem::E2:
        if (k + 1 <= n) m.at(k + 1, k) = Rat(n - k) * i;
        if (k - 1 >= 0) m.at(k - 1, k) = Rat(k) * i;
        break;
    }
  }
  return m;
}

// rho(g) on V_n by exact binomial expansion of
//   m_k((z1, z2) g) = (a z1 + b z2)^{n-k} (-conj(b) z1 + conj(a) z2)^k.
// Rejects g that is not in SU(2).
inline Mat rho(int n, const SU2Elem& g) {
  if (n < 0) throw std::domain_error("rho: n < 0");
  if (!g.is_valid()) throw std::domain_error("rho: element not in SU(2)");
  const Cyc a = g.a, b = g.b, nb = -g.b.conj(), ca = g.a.conj();
  Mat m(n + 1, n + 1);
  // powers cache
  auto powers = [](const Cyc& x, int top) {
    std::vector<Cyc> p(top + 1);
    p[0] = Cyc::one();
    for (int j = 1; j <= top; ++j) p[j] = p[j - 1] * x;
    return p;
  };
  const auto pa = powers(a, n), pb = powers(b, n), pnb = powers(nb, n), pca = powers(ca, n);
  for (int k = 0; k <= n; ++k) {
    for (int s = 0; s <= n - k; ++s) {
      const Cyc f1 = Rat(binomial(n - k, s)) * (pa[n - k - s] * pb[s]);
      if (f1.is_zero()) continue;
      for (int t = 0; t <= k; ++t) {
        const Cyc f2 = Rat(binomial(k, t)) * (pnb[k - t] * pca[t]);
        if (f2.is_zero()) continue;
        m.at(s + t, k) += f1 * f2;  // lands on m_{s+t}
      }
    }
  }
  return m;
}

// Adjoint action on the Lie algebra basis: column i holds the coordinates of
// g E_i g^{-1}, recovered via x_j = -(1/2) trace(M E_j). Orthogonal with
// determinant 1.
inline Mat adjoint(const SU2Elem& g) {
  if (!g.is_valid()) throw std::domain_error("adjoint: element not in SU(2)");
  const Mat gm = g.mat2(), gi = g.inverse().mat2();
  const Rat neg_half(-1, 2);
  Mat ad(3, 3);
  for (int i = 0; i < 3; ++i) {
    const Mat m = gm * lie_mat2(static_cast<LieElem>(i)) * gi;
    for (int j = 0; j < 3; ++j) {
      const Mat mj = m * lie_mat2(static_cast<LieElem>(j));
      ad.at(j, i) = neg_half * (mj.at(0, 0) + mj.at(1, 1));
    }
  }
  return ad;
}

// Diagonal Gram data of the invariant pairing on the monomial basis:
// <m_k, m_k> = k! (n-k)!.
inline std::vector<Rat> gram(int n) {
  if (n < 0) throw std::domain_error("gram: n < 0");
  std::vector<Rat> g(n + 1);
  for (int k = 0; k <= n; ++k) g[k] = Rat(factorial(k) * factorial(n - k));
  return g;
}

// Antiunitary structure map in unitary coordinates:
// star(u)_l = (-1)^{n-l} conj(u_{n-l}); star(star(u)) = (-1)^n u.
inline std::vector<Cyc> star(int n, const std::vector<Cyc>& u) {
  if (static_cast<int>(u.size()) != n + 1) throw std::invalid_argument("star: size");
  std::vector<Cyc> s(n + 1);
  for (int l = 0; l <= n; ++l) {
    Cyc v = u[n - l].conj();
    s[l] = ((n - l) % 2 == 0) ? v : -v;
  }
  return s;
}

// Linear part of the conjugation structure on monomial coordinates:
// conj of a matrix-coefficient function with polynomial vector w corresponds
// to w -> S * conj(w), S[j][n-j] = (-1)^{n-j}. Same signs as star because the
// Gram factors k!(n-k)! are symmetric under k -> n-k.
inline Mat star_monomial_matrix(int n) {
  Mat s(n + 1, n + 1);
  for (int j = 0; j <= n; ++j)
    s.at(j, n - j) = Cyc(Rat((n - j) % 2 == 0 ? 1 : -1));
  return s;
}

}  // namespace harmeig
