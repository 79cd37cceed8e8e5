#pragma once

// Independent floating-point verification path. Blocks are rebuilt in the
// unitary basis straight from the ladder coefficients
//   (-i E1 + E2): k -> 2i sqrt((k+1)(n-k)) at k+1,
//   ( i E1 + E2): k -> 2i sqrt(k(n-k+1))  at k-1,
//   E3:           k -> i (n - 2k) diagonal,
// never from the exact path's matrices; the only shared inputs are the frame
// constants and the float entries of group elements. Ranks come from
// singular values with a mandatory gap certificate.

#include "harmeig/frames.hpp"
#include "harmeig/operators.hpp"
#include "harmeig/subgroup.hpp"
#include "harmeig/torus.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace harmeig {

using CMat = Eigen::MatrixXcd;

struct IndeterminateRankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace fdetail {

inline std::complex<double> ci() { return {0.0, 1.0}; }

inline CMat ladder_raise(int n) {  // -i E1 + E2
  CMat a = CMat::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k)
    a(k + 1, k) = 2.0 * ci() * std::sqrt(double(k + 1) * double(n - k));
  return a;
}

inline CMat ladder_lower(int n) {  // i E1 + E2
  CMat b = CMat::Zero(n + 1, n + 1);
  for (int k = 1; k <= n; ++k)
    b(k - 1, k) = 2.0 * ci() * std::sqrt(double(k) * double(n - k + 1));
  return b;
}

}  // namespace fdetail

// Generators on V_n in the unitary basis, recovered from the two ladders.
inline CMat float_generator(int n, int which) {
  const CMat a = fdetail::ladder_raise(n);
  const CMat b = fdetail::ladder_lower(n);
  switch (which) {
    case 0: return 0.5 * fdetail::ci() * (a - b);  // E1
    case 1: return 0.5 * (a + b);                  // E2
    case 2: {
      CMat e3 = CMat::Zero(n + 1, n + 1);
      for (int k = 0; k <= n; ++k) e3(k, k) = fdetail::ci() * double(n - 2 * k);
      return e3;
    }
    default: throw std::domain_error("float_generator: index out of range");
  }
}

// Block of a catalog operator family on V_n in true (ungraded) fiber
// coordinates and the unitary function basis.
inline CMat float_block(OpFamily family, int n, const Frame& frame) {
  if (n < 0 || n > 40) throw std::domain_error("float_block: n out of range");
  const double p = std::sqrt(rat_to_double(frame.p_sq));
  const double q = rat_to_double(frame.q);
  const double p2 = rat_to_double(frame.p_sq);
  const int dim = n + 1;
  const CMat e1 = p * float_generator(n, 0);
  const CMat e2 = p * float_generator(n, 1);
  const CMat e3 = q * float_generator(n, 2);
  const CMat id = CMat::Identity(dim, dim);

  auto compose4 = [&](const std::vector<std::vector<CMat>>& cells) {
    const int d = static_cast<int>(cells.size());
    CMat m = CMat::Zero(d * dim, d * dim);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m.block(r * dim, c * dim, dim, dim) = cells[r][c];
    return m;
  };

  const CMat z = CMat::Zero(dim, dim);
  switch (family) {
    case OpFamily::laplacian:
      return -(e1 * e1 + e2 * e2 + e3 * e3);
    case OpFamily::rot:
      return compose4({{-2 * q * id, -e3, e2},
                       {e3, -2 * q * id, -e1},
                       {-e2, e1, -(2 * p2 / q) * id}});
    case OpFamily::grad: {
      CMat m(3 * dim, dim);
      m.block(0, 0, dim, dim) = e1;
      m.block(dim, 0, dim, dim) = e2;
      m.block(2 * dim, 0, dim, dim) = e3;
      return m;
    }
    case OpFamily::divergence: {
      CMat m(dim, 3 * dim);
      m.block(0, 0, dim, dim) = e1;
      m.block(0, dim, dim, dim) = e2;
      m.block(0, 2 * dim, dim, dim) = e3;
      return m;
    }
    case OpFamily::dirac_se:
      return compose4({{(1 - 2 * q) * id, -e3, e2, -e1},
                       {e3, (1 - 2 * q) * id, -e1, -e2},
                       {-e2, e1, (1 - 2 * p2 / q) * id, -e3},
                       {e1, e2, e3, 3 * id}});
    case OpFamily::dirac_sine:
      return compose4({{(2 + 2 * q) * id, e3, -e2, -e1},
                       {-e3, (2 + 2 * q) * id, e1, -e2},
                       {e2, -e1, (2 + 2 * p2 / q) * id, -e3},
                       {e1, e2, e3, z}});
    case OpFamily::dirac_a3:
      if (!(frame == frame_a3()))
        throw std::domain_error("float_block: dirac_A3 needs the squashed 1/7 frame");
      return compose4({{(-15.0 / 7.0) * id, -e3, e2, -e1},
                       {e3, (-15.0 / 7.0) * id, -e1, -e2},
                       {-e2, e1, 3 * id, -e3},
                       {e1, e2, e3, 3 * id}});
    case OpFamily::custom: break;
  }
  throw std::domain_error("float_block: unsupported family");
}

// Unitary representation matrix from the float entries of a group element:
// monomial substitution expansion, then conjugation by the norm weights
// 1/sqrt(binom(n, k)).
inline CMat float_rho(int n, std::complex<double> a, std::complex<double> b) {
  const int dim = n + 1;
  CMat m = CMat::Zero(dim, dim);
  const std::complex<double> nb = -std::conj(b), ca = std::conj(a);
  auto powers = [dim](std::complex<double> x) {
    std::vector<std::complex<double>> p(dim);
    p[0] = 1.0;
    for (int j = 1; j < dim; ++j) p[j] = p[j - 1] * x;
    return p;
  };
  const auto pa = powers(a), pb = powers(b), pnb = powers(nb), pca = powers(ca);
  auto fbinom = [](int nn, int kk) {
    return binomial(nn, kk).convert_to<double>();
  };
  for (int k = 0; k <= n; ++k) {
    // (a z1 + b z2)^{n-k} (-conj(b) z1 + conj(a) z2)^k
    for (int s = 0; s <= n - k; ++s)
      for (int t = 0; t <= k; ++t) {
        const double c1 = fbinom(n - k, s), c2 = fbinom(k, t);
        const std::complex<double> coeff =
            c1 * c2 * pa[n - k - s] * pb[s] * pnb[k - t] * pca[t];
        m(s + t, k) += coeff;  // z1^{n-(s+t)} z2^{s+t}
      }
  }
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k)
      m(j, k) *= std::sqrt(fbinom(n, k) / fbinom(n, j));
  return m;
}

inline CMat float_rho(int n, const SU2Elem& g) {
  return float_rho(n, g.a.to_float(), g.b.to_float());
}

// Fiber action of a group element in true frame coordinates. Ad is computed
// on the 2x2 float entries via ad(j, i) = -tr(u E_i u^-1 E_j) / 2, then
// rescaled by the frame lengths diag(p, p, q).
inline CMat float_fiber(const std::string& kind, const Frame& frame,
                        const SU2Elem& g, int d) {
  if (kind == "trivial") return CMat::Identity(d, d);

  using C2 = Eigen::Matrix2cd;
  const std::complex<double> a = g.a.to_float(), b = g.b.to_float();
  const std::complex<double> i = fdetail::ci();
  C2 u;
  u << a, -std::conj(b), b, std::conj(a);
  const C2 uinv = u.adjoint();
  std::vector<C2> basis(3);
  basis[0] << 0, 1, -1, 0;   // E1
  basis[1] << 0, i, i, 0;    // E2
  basis[2] << i, 0, 0, -i;   // E3
  CMat ad = CMat::Zero(3, 3);
  for (int c = 0; c < 3; ++c) {
    const C2 w = u * basis[c] * uinv;
    for (int r = 0; r < 3; ++r)
      ad(r, c) = -0.5 * (w * basis[r]).trace();
  }
  // scale to frame coordinates: diag(p, p, q)^{-1} Ad diag(p, p, q)
  const double p = std::sqrt(rat_to_double(frame.p_sq));
  const double q = rat_to_double(frame.q);
  const double scale[3] = {p, p, q};
  CMat ad_frame = CMat::Zero(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      ad_frame(r, c) = ad(r, c) * scale[c] / scale[r];

  if (kind == "adjoint") return ad_frame;
  if (kind == "pair") {
    CMat m = CMat::Identity(4, 4);
    m.block(0, 0, 3, 3) = ad_frame;
    return m;
  }
  throw std::domain_error("float_fiber: unknown kind " + kind);
}

// Averaging projector onto the invariant subspace, float side.
inline CMat float_projector(int n, const FiniteSubgroup& gamma,
                            const std::string& fiber_kind, const Frame& frame,
                            int d) {
  const int dim = d * (n + 1);
  CMat p = CMat::Zero(dim, dim);
  for (const SU2Elem& g : gamma.elements) {
    const CMat tau = float_fiber(fiber_kind, frame, g, d);
    const CMat rho_g = float_rho(n, g);
    CMat k(dim, dim);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        k.block(r * (n + 1), c * (n + 1), n + 1, n + 1) = tau(r, c) * rho_g;
    p += k;
  }
  p /= double(gamma.order());
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-9)
    throw std::domain_error("float_projector: not idempotent");
  return p;
}

// Orthonormal basis of the range of a Hermitian idempotent.
inline CMat float_invariant_basis(const CMat& projector) {
  Eigen::JacobiSVD<CMat> svd(projector, Eigen::ComputeThinU);
  int r = 0;
  for (int j = 0; j < svd.singularValues().size(); ++j)
    if (svd.singularValues()(j) > 0.5) ++r;
  return svd.matrixU().leftCols(r);
}

// Count singular values of (M - alpha I) below 1e-8, certified by a 10^6
// gap between the zero and nonzero clusters; indeterminate spectra fail.
inline int float_nullity(const CMat& m, double alpha = 0.0) {
  if (m.rows() != m.cols()) throw std::domain_error("float_nullity: not square");
  if (m.rows() == 0) return 0;
  CMat a = m;
  for (int j = 0; j < m.rows(); ++j) a(j, j) -= alpha;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& sv = svd.singularValues();
  constexpr double kTol = 1e-8;
  constexpr double kGap = 1e6;
  double max_zero = 0.0, min_nonzero = -1.0;
  int count = 0;
  for (int j = 0; j < sv.size(); ++j) {
    const double s = sv(j);
    if (s < kTol) {
      ++count;
      if (s > max_zero) max_zero = s;
    } else if (min_nonzero < 0 || s < min_nonzero) {
      min_nonzero = s;
    }
  }
  if (count > 0 && min_nonzero > 0 && max_zero > 0 &&
      min_nonzero / max_zero < kGap)
    throw IndeterminateRankError("float_nullity: singular value gap below 1e6");
  return count;
}

// Torus blocks from the float frequency vector; independent of the exact path.
inline CMat float_torus_block(OpFamily family, const Gamma3& g) {
  const double s2 = std::sqrt(2.0);
  const double c1 = s2 * double(g[0]);
  const double c2 = s2 * double(g[1] - g[2]);
  const double c3 = double(-g[0] + g[1] + g[2]);
  const std::complex<double> i = fdetail::ci();
  if (family == OpFamily::laplacian) {
    CMat m(1, 1);
    m(0, 0) = c1 * c1 + c2 * c2 + c3 * c3;
    return m;
  }
  if (family == OpFamily::rot) {
    CMat m = CMat::Zero(3, 3);
    m(0, 1) = -i * c3;
    m(0, 2) = i * c2;
    m(1, 0) = i * c3;
    m(1, 2) = -i * c1;
    m(2, 0) = -i * c2;
    m(2, 1) = i * c1;
    return m;
  }
  throw std::domain_error("float_torus_block: unsupported family");
}

// Exact block carried to the oracle's coordinates (unitary basis, ungraded
// fiber): comparison utility for cross-path tests, not part of the oracle's
// own rank pipeline.
inline CMat transport_exact_block(const OperatorSpec& op, int n) {
  const Mat b = block_matrix(op, n);
  const double p = std::sqrt(rat_to_double(op.frame.p_sq));
  const int dim = n + 1;
  auto fbinom = [](int nn, int kk) {
    return binomial(nn, kk).convert_to<double>();
  };
  auto weight = [&](int slot_grade, int k) {
    // basis norm 1/sqrt(binom) times the graded-slot rescale p^grade
    return 1.0 / (std::sqrt(fbinom(n, k)) * std::pow(p, slot_grade));
  };
  CMat out(op.d_out * dim, op.d_in * dim);
  for (int r = 0; r < op.d_out; ++r)
    for (int c = 0; c < op.d_in; ++c)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          out(r * dim + i, c * dim + j) =
              b.at(r * dim + i, c * dim + j).to_float() *
              weight(op.grade_out[r], i) / weight(op.grade_in[c], j);
  return out;
}

// Monte-Carlo Schur orthogonality of matrix coefficients: returns the max
// deviation from 0 (distinct representations) or from the delta pattern
// divided by n + 1 (same representation). Haar measure via normalized
// 4-dimensional Gaussians; fixed seed for reproducibility.
inline double schur_orthogonality_check(int n, int m, int samples,
                                        unsigned seed = 20240816) {
  if (n < 0 || m < 0 || samples <= 0)
    throw std::domain_error("schur_orthogonality_check: bad arguments");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dn = n + 1, dm = m + 1;
  std::vector<std::complex<double>> acc(dn * dn * dm * dm, 0.0);
  for (int s = 0; s < samples; ++s) {
    double x0 = gauss(rng), x1 = gauss(rng), x2 = gauss(rng), x3 = gauss(rng);
    const double norm = std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
    const std::complex<double> a(x0 / norm, x1 / norm), b(x2 / norm, x3 / norm);
    const CMat rn = float_rho(n, a, b);
    const CMat rm = n == m ? rn : float_rho(m, a, b);
    int idx = 0;
    for (int i = 0; i < dn; ++i)
      for (int j = 0; j < dn; ++j)
        for (int k = 0; k < dm; ++k)
          for (int l = 0; l < dm; ++l)
            acc[idx++] += rn(i, j) * std::conj(rm(k, l));
  }
  double dev = 0.0;
  int idx = 0;
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < dn; ++j)
      for (int k = 0; k < dm; ++k)
        for (int l = 0; l < dm; ++l) {
          std::complex<double> expect = 0.0;
          if (n == m && i == k && j == l) expect = 1.0 / double(n + 1);
          dev = std::max(dev, std::abs(acc[idx++] / double(samples) - expect));
        }
  return dev;
}

}  // namespace harmeig
