#pragma once

// Per-irrep eigenproblem solver with certified cutoffs.
//
// An eigenproblem B psi = alpha psi over the group decomposes into blocks
// indexed by the irrep V_n; each block is block_matrix(op, n) - alpha I
// restricted to the equivariant subspace, and contributes (n+1) times its
// nullity to the total dimension (the spectator tensor slot).
//
// Completeness needs an upper bound on the n that can contribute. Three
// families carry exact certificates derived from necessary scalar
// eigenvalue conditions; anything else must be given a manual cutoff and is
// reported as uncertified.

#include "harmeig/cyclotomic.hpp"
#include "harmeig/frames.hpp"
#include "harmeig/linalg.hpp"
#include "harmeig/operators.hpp"
#include "harmeig/rational.hpp"
#include "harmeig/subgroup.hpp"
#include "harmeig/su2.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace harmeig {

struct UncertifiedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  Frame frame;
  OperatorSpec op;
  Rat alpha;
  FiniteSubgroup gamma;
  FiberRep tau;
  std::optional<int> manual_cutoff;  // empty = use the certified rule

  Problem(Frame f, OperatorSpec o, Rat a, FiniteSubgroup g, FiberRep t)
      : frame(std::move(f)), op(std::move(o)), alpha(std::move(a)),
        gamma(std::move(g)), tau(std::move(t)) {
    if (op.d_in != op.d_out) throw std::domain_error("problem: operator not square");
    if (tau.d != op.d_in) throw std::domain_error("problem: fiber dimension mismatch");
    if (!(op.frame == frame)) throw std::domain_error("problem: frame mismatch");
  }
};

struct BlockSolution {
  int n = 0;
  int nullity = 0;
  Mat basis;  // ambient coordinates, one column per kernel vector
};

struct SolutionSpace {
  std::vector<BlockSolution> blocks;
  int n_max = -1;
  bool certified = false;
  long long complex_dim = 0;
  std::optional<long long> real_dim;  // set when conjugation-closed
  bool conjugation_closed = false;
};

namespace detail {

// Largest n >= 0 with lb(n) <= target, where lb is eventually increasing and
// scan_limit lies beyond its last dip. Returns -1 when no n qualifies.
template <typename F>
int largest_below(const F& lb, const Rat& target, int scan_limit) {
  int best = -1;
  for (int n = 0; n <= scan_limit; ++n)
    if (lb(n) <= target) best = n;
  return best;
}

inline int scan_limit_for(const Rat& target, const Rat& leading) {
  // conservative horizon: leading * n^2 dominates every lower-order term used
  // in the bounds below once n is past this point
  if (target <= 0) return 4;
  const Rat ratio = target / leading;
  long long lim = 4;
  while (Rat(lim) * Rat(lim) <= ratio * Rat(4)) ++lim;
  return static_cast<int>(lim + 4);
}

}  // namespace detail

// Least N such that no block with n > N can meet the family's necessary
// eigenvalue condition. Throws UncertifiedError for families without a rule.
inline int certified_cutoff(const Problem& pr) {
  const Rat p2 = pr.frame.p_sq;
  const Rat q2 = pr.frame.q * pr.frame.q;
  switch (pr.op.family) {
    case OpFamily::laplacian: {
      // eigenvalue (q^2 - p^2)(n-2k)^2 + p^2 n(n+2) >= min(p^2,q^2) n^2 + 2 p^2 n
      const Rat lead = p2 < q2 ? p2 : q2;
      auto lb = [&](int n) { return lead * Rat(n) * Rat(n) + Rat(2) * p2 * Rat(n); };
      return detail::largest_below(lb, pr.alpha, detail::scan_limit_for(pr.alpha, lead));
    }
    case OpFamily::rot: {
      // any eigenfield component is a Laplace eigenfunction at
      // T = alpha (alpha + 2p^2/q), in the plain or the shifted weight sector
      if (pr.alpha == 0)
        throw UncertifiedError("certified_cutoff: rot at alpha = 0 has no certificate");
      const Rat target = pr.alpha * (pr.alpha + Rat(2) * p2 / pr.frame.q);
      auto lb = [&](int n) {
        if (q2 >= p2) return p2 * Rat(n) * Rat(n + 2);
        return Rat(n + 2) * (q2 * Rat(n + 2) - Rat(2) * p2);
      };
      const Rat lead = p2 < q2 ? p2 : q2;
      return detail::largest_below(lb, target, detail::scan_limit_for(target, lead));
    }
    case OpFamily::dirac_a3: {
      // weight-shifted sector: -6(n-2k+2)^2 - n(n+2) + 24 + (7a+1)(a-3) = 0
      // forces n(n+2) <= 24 + (7a+1)(a-3); the remaining sector is a single
      // weight line n = -(15/7 + a), nonempty only at integer n >= 0
      const Rat rhs = Rat(24) + (Rat(7) * pr.alpha + 1) * (pr.alpha - 3);
      auto lb = [](int n) { return Rat(n) * Rat(n + 2); };
      int best = detail::largest_below(lb, rhs, detail::scan_limit_for(rhs, Rat(1)));
      const Rat line = -(Rat(15, 7) + pr.alpha);
      if (line >= 0 && rat_is_integer(line))
        best = std::max(best, static_cast<int>(rat_num(line)));
      return best;
    }
    default:
      throw UncertifiedError("certified_cutoff: no rule for operator family " +
                             std::string(op_family_name(pr.op.family)));
  }
}

namespace detail {

// Coefficientwise conjugate composed with the monomial star map on each
// fiber slot: the block image of pointwise complex conjugation.
inline Mat conjugate_vector(const Mat& w, int d_fiber, int n) {
  const int d = n + 1;
  Mat out(w.rows(), w.cols());
  for (int c = 0; c < w.cols(); ++c)
    for (int s = 0; s < d_fiber; ++s)
      for (int j = 0; j <= n; ++j) {
        const Cyc v = w.at(s * d + (n - j), c).conj();
        out.at(s * d + j, c) = ((n - j) % 2 == 0) ? v : -v;
      }
  return out;
}

inline BlockSolution solve_block(const Problem& pr, int n) {
  BlockSolution bs;
  bs.n = n;
  const Mat c = equivariant_basis(n, pr.gamma, pr.tau);
  if (c.cols() == 0) {
    bs.basis = Mat(pr.op.d_in * (n + 1), 0);
    return bs;
  }
  Mat a = block_matrix(pr.op, n, pr.frame);
  const Cyc alpha(pr.alpha);
  for (int i = 0; i < a.rows(); ++i) a.at(i, i) = a.at(i, i) - alpha;
  const Mat ker = nullspace(a * c);
  bs.basis = c * ker;
  bs.nullity = bs.basis.cols();
  if (!(a * bs.basis).is_zero())
    throw std::domain_error("solve: nonzero residual");  // unreachable by construction
  return bs;
}

}  // namespace detail

// True iff every block basis is stable under pointwise complex conjugation,
// which is what lets the complex dimension stand in for the real one.
inline bool conjugation_closure_check(const SolutionSpace& space, int d_fiber) {
  for (const auto& b : space.blocks) {
    if (b.nullity == 0) continue;
    const Mat conj = detail::conjugate_vector(b.basis, d_fiber, b.n);
    for (int c = 0; c < conj.cols(); ++c)
      if (!in_span(b.basis, conj.col(c))) return false;
  }
  return true;
}

inline SolutionSpace solve(const Problem& pr, bool parallel = false) {
  SolutionSpace out;
  if (pr.manual_cutoff) {
    out.n_max = *pr.manual_cutoff;
    out.certified = false;
  } else {
    out.n_max = certified_cutoff(pr);
    out.certified = true;
  }
  out.blocks.resize(std::max(out.n_max + 1, 0));
  if (parallel && out.n_max >= 1) {
    std::vector<std::thread> pool;
    pool.reserve(out.n_max + 1);
    for (int n = 0; n <= out.n_max; ++n)
      pool.emplace_back(
          [&pr, &out, n]() { out.blocks[n] = detail::solve_block(pr, n); });
    for (auto& t : pool) t.join();
  } else {
    for (int n = 0; n <= out.n_max; ++n) out.blocks[n] = detail::solve_block(pr, n);
  }
  out.complex_dim = 0;
  for (const auto& b : out.blocks)
    out.complex_dim += static_cast<long long>(b.n + 1) * b.nullity;
  out.conjugation_closed = conjugation_closure_check(out, pr.op.d_in);
  if (out.conjugation_closed) out.real_dim = out.complex_dim;
  return out;
}

}  // namespace harmeig
