#pragma once

// Flat three-torus backend. The function space splits into characters
// f_gamma(theta) = exp(i <gamma, theta>), gamma in Z^3, and each frame
// derivation acts by e_j f_gamma = i c_j(gamma) f_gamma, so an invariant
// operator restricts to one finite matrix per lattice point. Level sets of
// the frequency form Q are finite and their enumeration is certified by the
// smallest Gram eigenvalue of Q, which is 1.

#include "harmeig/cyclotomic.hpp"
#include "harmeig/linalg.hpp"
#include "harmeig/operators.hpp"
#include "harmeig/rational.hpp"
#include "harmeig/solver.hpp"

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

namespace harmeig {

using Gamma3 = std::array<long long, 3>;

// Q(gamma) = |c(gamma)|^2 with c as below; Gram matrix
// ((3,-1,-1),(-1,3,-1),(-1,-1,3)), eigenvalues {1, 4, 4}.
inline BigInt torus_qform(const Gamma3& g) {
  const BigInt g1 = g[0], g2 = g[1], g3 = g[2];
  return 3 * g1 * g1 + 3 * g2 * g2 + 3 * g3 * g3 - 2 * g1 * g2 - 2 * g1 * g3 -
         2 * g2 * g3;
}

// Frequency vector c(gamma) = (sqrt2 g1, sqrt2 (g2 - g3), -g1 + g2 + g3);
// e_j acts on f_gamma by i c_j(gamma). All three entries are real.
inline std::array<Cyc, 3> torus_freq(const Gamma3& g) {
  const Cyc s2 = Cyc::sqrt2();
  return {Rat(g[0]) * s2, Rat(g[1] - g[2]) * s2,
          Cyc(Rat(-g[0] + g[1] + g[2]))};
}

// All gamma with Q(gamma) = lambda, in lexicographic order. Complete because
// Q(gamma) >= |gamma|^2 (smallest Gram eigenvalue 1), so solutions lie in the
// box max|gamma_i| <= floor(sqrt(lambda)). radius_scale widens the box for
// completeness audits; it never changes the result.
inline std::vector<Gamma3> lattice_enumerate(const Rat& lambda,
                                             int radius_scale = 1) {
  if (lambda < 0) throw std::domain_error("lattice_enumerate: negative level");
  if (radius_scale < 1) throw std::domain_error("lattice_enumerate: bad scale");
  std::vector<Gamma3> out;
  if (!rat_is_integer(lambda)) return out;
  const BigInt lam = rat_num(lambda);
  const long long r =
      radius_scale * isqrt_floor(lam).template convert_to<long long>();
  for (long long g1 = -r; g1 <= r; ++g1)
    for (long long g2 = -r; g2 <= r; ++g2)
      for (long long g3 = -r; g3 <= r; ++g3) {
        const Gamma3 g{g1, g2, g3};
        if (torus_qform(g) == lam) out.push_back(g);
      }
  return out;
}

// Torus operators reuse the word/term encoding: no grading, no frame scale,
// and the only admissible second-order words are the squares e_j e_j that
// assemble the Laplacian.
struct TorusOp {
  OpFamily family = OpFamily::custom;
  int d_in = 1, d_out = 1;
  std::vector<OpTerm> terms;
};

inline void validate_torus_op(const TorusOp& op) {
  if (op.d_in <= 0 || op.d_out <= 0) throw std::domain_error("torus op: empty fiber");
  for (const auto& t : op.terms) {
    if (t.coeff.rows() != op.d_out || t.coeff.cols() != op.d_in)
      throw std::domain_error("torus op: term shape mismatch");
    if (t.word.size() > 2) throw std::domain_error("torus op: degree above 2");
    for (int s : t.word)
      if (s < 0 || s > 2) throw std::domain_error("torus op: bad frame index");
    if (t.word.size() == 2 && t.word[0] != t.word[1])
      throw std::domain_error("torus op: degree-2 word outside the Laplacian pattern");
  }
}

namespace detail {

inline void add_torus_term(TorusOp& op, int r, int c, const Cyc& coeff,
                           std::vector<int> word) {
  OpTerm t{Mat(op.d_out, op.d_in), std::move(word)};
  t.coeff.at(r, c) = coeff;
  op.terms.push_back(std::move(t));
}

}  // namespace detail

// Block of the operator on the character f_gamma: substitute e_j -> i c_j.
inline Mat torus_block(const TorusOp& op, const Gamma3& g) {
  validate_torus_op(op);
  const auto c = torus_freq(g);
  Mat b(op.d_out, op.d_in);
  for (const auto& t : op.terms) {
    Cyc w = Cyc::one();
    for (int s : t.word) w *= Cyc::i() * c[s];
    for (int r = 0; r < op.d_out; ++r)
      for (int j = 0; j < op.d_in; ++j) {
        if (t.coeff.at(r, j).is_zero()) continue;
        b.at(r, j) += w * t.coeff.at(r, j);
      }
  }
  return b;
}

// Scalar Laplacian -sum_j e_j e_j; block is the 1x1 matrix [Q(gamma)].
inline TorusOp torus_op_laplacian() {
  TorusOp op;
  op.family = OpFamily::laplacian;
  op.d_in = op.d_out = 1;
  for (int j = 0; j < 3; ++j)
    detail::add_torus_term(op, 0, 0, Cyc(Rat(-1)), {j, j});
  validate_torus_op(op);
  return op;
}

// Curl on frame coordinates; the torus structure constants vanish, so there
// is no constant part and the block is i K(c) with K v = c x v.
inline TorusOp torus_op_rot() {
  TorusOp op;
  op.family = OpFamily::rot;
  op.d_in = op.d_out = 3;
  const Cyc one = Cyc::one();
  detail::add_torus_term(op, 0, 1, -one, {2});
  detail::add_torus_term(op, 0, 2, one, {1});
  detail::add_torus_term(op, 1, 0, one, {2});
  detail::add_torus_term(op, 1, 2, -one, {0});
  detail::add_torus_term(op, 2, 0, -one, {1});
  detail::add_torus_term(op, 2, 1, one, {0});
  validate_torus_op(op);
  return op;
}

inline TorusOp torus_op_grad() {
  TorusOp op;
  op.family = OpFamily::grad;
  op.d_in = 1;
  op.d_out = 3;
  for (int j = 0; j < 3; ++j)
    detail::add_torus_term(op, j, 0, Cyc::one(), {j});
  validate_torus_op(op);
  return op;
}

inline TorusOp torus_op_div() {
  TorusOp op;
  op.family = OpFamily::divergence;
  op.d_in = 3;
  op.d_out = 1;
  for (int j = 0; j < 3; ++j)
    detail::add_torus_term(op, 0, j, Cyc::one(), {j});
  validate_torus_op(op);
  return op;
}

// First-order operator on (vector field, function) pairs:
//   (v, f) -> (-grad f + rot v + v, div v + 3 f).
inline TorusOp torus_op_dirac_se() {
  TorusOp op;
  op.family = OpFamily::dirac_se;
  op.d_in = op.d_out = 4;
  const Cyc one = Cyc::one();
  detail::add_torus_term(op, 0, 1, -one, {2});
  detail::add_torus_term(op, 0, 2, one, {1});
  detail::add_torus_term(op, 1, 0, one, {2});
  detail::add_torus_term(op, 1, 2, -one, {0});
  detail::add_torus_term(op, 2, 0, -one, {1});
  detail::add_torus_term(op, 2, 1, one, {0});
  for (int j = 0; j < 3; ++j) {
    detail::add_torus_term(op, j, j, one, {});
    detail::add_torus_term(op, j, 3, -one, {j});
    detail::add_torus_term(op, 3, j, one, {j});
  }
  detail::add_torus_term(op, 3, 3, Cyc(Rat(3)), {});
  validate_torus_op(op);
  return op;
}

struct TorusProblem {
  TorusOp op;
  Rat alpha;
};

struct TorusPointBlock {
  Gamma3 gamma{};
  int nullity = 0;
  Mat basis;  // kernel of (M_gamma - alpha I), one column per vector
};

struct TorusSolution {
  SolutionSpace space;
  Rat level;  // the single Q-level that can carry solutions
  std::vector<TorusPointBlock> points;
};

// Eigenvalue solve over the torus. For the Laplacian the block at gamma is
// [Q(gamma)], so solutions live exactly on the level Q = alpha; for rot the
// block eigenvalues are {0, +-sqrt(Q)}, so a nonzero alpha selects the level
// Q = alpha^2 (alpha = 0 meets the infinite-dimensional gradient kernel and
// is rejected). Enumerating that one level is therefore a certified cutoff.
inline TorusSolution torus_solve_detail(const TorusProblem& pr) {
  validate_torus_op(pr.op);
  if (pr.op.family != OpFamily::laplacian && pr.op.family != OpFamily::rot)
    throw std::domain_error("torus_solve: operator must be laplacian or rot");
  if (pr.op.family == OpFamily::rot && pr.alpha == 0)
    throw UncertifiedError("torus rot: eigenvalue 0 is not a finite problem");

  TorusSolution sol;
  sol.level = pr.op.family == OpFamily::laplacian ? pr.alpha
                                                  : pr.alpha * pr.alpha;
  const std::vector<Gamma3> pts =
      sol.level < 0 ? std::vector<Gamma3>{} : lattice_enumerate(sol.level);
  const int d = pr.op.d_in;

  long long total = 0;
  for (const Gamma3& g : pts) {
    Mat a = torus_block(pr.op, g);
    for (int j = 0; j < d; ++j) a.at(j, j) -= Cyc(pr.alpha);
    Mat ker = nullspace(a);
    if (!(a * ker).is_zero())
      throw std::domain_error("torus_solve: nonzero residual");
    TorusPointBlock pb;
    pb.gamma = g;
    pb.nullity = ker.cols();
    pb.basis = std::move(ker);
    total += pb.nullity;
    sol.points.push_back(std::move(pb));
  }

  // Real form: conj(M_gamma) = M_{-gamma}, so conjugation maps the kernel at
  // gamma onto the kernel at -gamma and pairs the levels into real solutions.
  bool closed = true;
  for (std::size_t i = 0; i < sol.points.size(); ++i) {
    const Gamma3 neg{-sol.points[i].gamma[0], -sol.points[i].gamma[1],
                     -sol.points[i].gamma[2]};
    const TorusPointBlock* partner = nullptr;
    for (const auto& other : sol.points)
      if (other.gamma == neg) {
        partner = &other;
        break;
      }
    if (partner == nullptr) {
      closed = false;
      break;
    }
    const Mat conj_basis = sol.points[i].basis.conj_entrywise();
    for (int jcol = 0; jcol < conj_basis.cols(); ++jcol)
      if (!in_span(partner->basis, conj_basis.col(jcol))) {
        closed = false;
        break;
      }
    if (!closed) break;
  }

  SolutionSpace& s = sol.space;
  s.certified = true;
  s.complex_dim = total;
  s.conjugation_closed = closed;
  if (closed) s.real_dim = total;
  if (rat_is_integer(sol.level) && sol.level >= 0) {
    s.n_max = static_cast<int>(
        isqrt_floor(rat_num(sol.level)).template convert_to<long long>());
    BlockSolution agg;
    agg.n = static_cast<int>(rat_num(sol.level).template convert_to<long long>());
    agg.nullity = static_cast<int>(total);
    s.blocks.push_back(std::move(agg));
  } else {
    s.n_max = 0;
  }
  return sol;
}

inline SolutionSpace torus_solve(const TorusProblem& pr) {
  return torus_solve_detail(pr).space;
}

}  // namespace harmeig
