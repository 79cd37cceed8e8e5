#pragma once

// Finite subgroups of SU(2) and exact equivariant subspaces.
//
// Sections of a homogeneous bundle with fiber W pick up, per irrep V_n, the
// subspace of W (x) V_n fixed by k |-> tau(k) (x) rho(n, k) over the isotropy
// group. The fixed space is cut out exactly by the averaging projector.
//
// Fiber actions live in the same p-graded coordinates as the operator blocks
// (weight-1 slots rescaled by p), so an adjoint-type action is conjugated by
// D = diag(p, p, q/p). The off-axis entries of Ad pick up rational factors
// q/p^2 and p^2/q; everything stays in the cyclotomic field.

#include "harmeig/cyclotomic.hpp"
#include "harmeig/frames.hpp"
#include "harmeig/linalg.hpp"
#include "harmeig/rational.hpp"
#include "harmeig/su2.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace harmeig {

struct FiniteSubgroup {
  std::string label;
  std::vector<SU2Elem> generators;
  std::vector<SU2Elem> elements;

  int order() const { return static_cast<int>(elements.size()); }

  bool contains(const SU2Elem& g) const {
    for (const auto& e : elements)
      if (e == g) return true;
    return false;
  }
};

// Multiplicative closure with exact deduplication. The bound guards against
// wrong generator data: every group used here has order at most 24.
inline FiniteSubgroup closure(std::string label, std::vector<SU2Elem> generators,
                              int bound = 240) {
  for (const auto& g : generators)
    if (!g.is_valid()) throw std::domain_error("closure: generator not in SU(2)");
  FiniteSubgroup sub;
  sub.label = std::move(label);
  sub.generators = std::move(generators);
  sub.elements.push_back(SU2Elem::identity());
  std::vector<SU2Elem> frontier = sub.elements;
  while (!frontier.empty()) {
    std::vector<SU2Elem> next;
    for (const auto& e : frontier)
      for (const auto& g : sub.generators) {
        const SU2Elem p = e * g;
        if (!sub.contains(p)) {
          sub.elements.push_back(p);
          next.push_back(p);
          if (sub.order() > bound)
            throw std::domain_error("closure: bound exceeded, generator data wrong");
        }
      }
    frontier = std::move(next);
  }
  return sub;
}

inline FiniteSubgroup subgroup_trivial() { return closure("trivial", {}); }

inline FiniteSubgroup subgroup_z2() {
  return closure("Z2", {su2_diag(-Cyc::one())});
}

// diag(w, conj w) with w a primitive cube root of unity.
inline FiniteSubgroup subgroup_z3() {
  return closure("Z3", {su2_diag(Cyc::zeta_pow(8))});
}

// Binary tetrahedral group, order 24.
inline FiniteSubgroup subgroup_a4star() {
  const Cyc half = Cyc(Rat(1, 2));
  const SU2Elem k1 = su2_diag(Cyc::i());
  const SU2Elem k2{Cyc::zero(), Cyc::one()};
  const SU2Elem k3{half * (Cyc::one() + Cyc::i()), half * (Cyc::one() + Cyc::i())};
  return closure("A4star", {k1, k2, k3});
}

// Binary dihedral group of order 12.
inline FiniteSubgroup subgroup_d3star() {
  const SU2Elem k4{Cyc::zero(), Cyc::one()};
  const SU2Elem k5 = su2_diag(Cyc::zeta_pow(4));
  return closure("D3star", {k4, k5});
}

struct FiberRep {
  int d = 1;
  std::string kind;  // "trivial" | "adjoint-in-frame" | "explicit"
  std::function<Mat(const SU2Elem&)> action;

  Mat operator()(const SU2Elem& g) const { return action(g); }
};

inline FiberRep fiber_trivial(int d = 1) {
  FiberRep tau;
  tau.d = d;
  tau.kind = "trivial";
  tau.action = [d](const SU2Elem&) { return Mat::identity(d); };
  return tau;
}

// Adjoint action written on graded frame coordinates. Requires Ad(Gamma) to
// preserve the splitting span{E1, E2} (+) span{E3}; otherwise the anisotropic
// frame metric is not invariant and the quotient data is inconsistent.
inline FiberRep fiber_adjoint_in_frame(const Frame& frame, const FiniteSubgroup& gamma) {
  const Rat s31 = frame.q / frame.p_sq;      // row < 2, col = 2
  const Rat s13 = frame.p_sq / frame.q;      // row = 2, col < 2
  const bool isotropic = (frame.p_sq == frame.q * frame.q);
  for (const auto& k : gamma.elements) {
    const Mat ad = adjoint(k);
    if (isotropic) continue;
    for (int i = 0; i < 2; ++i)
      if (!ad.at(i, 2).is_zero() || !ad.at(2, i).is_zero())
        throw std::domain_error("fiber_adjoint_in_frame: frame metric not invariant");
  }
  FiberRep tau;
  tau.d = 3;
  tau.kind = "adjoint-in-frame";
  tau.action = [s31, s13](const SU2Elem& g) {
    Mat m = adjoint(g);
    for (int i = 0; i < 2; ++i) {
      m.at(i, 2) = s31 * m.at(i, 2);
      m.at(2, i) = s13 * m.at(2, i);
    }
    return m;
  };
  return tau;
}

// Adjoint on the vector slots, trivial on the trailing function slot.
inline FiberRep fiber_normal_in_frame(const Frame& frame, const FiniteSubgroup& gamma) {
  FiberRep adj = fiber_adjoint_in_frame(frame, gamma);
  FiberRep tau;
  tau.d = 4;
  tau.kind = "explicit";
  tau.action = [inner = adj.action](const SU2Elem& g) {
    const Mat m = inner(g);
    Mat out(4, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.at(i, j) = m.at(i, j);
    out.at(3, 3) = Cyc::one();
    return out;
  };
  return tau;
}

// tau(g h) == tau(g) tau(h) over the whole subgroup.
inline bool fiber_rep_multiplicative(const FiberRep& tau, const FiniteSubgroup& gamma) {
  for (const auto& g : gamma.elements)
    for (const auto& h : gamma.elements)
      if (!(tau(g * h) == tau(g) * tau(h))) return false;
  return true;
}

// Averaging projector onto the fixed space of k |-> tau(k) (x) rho(n, k).
inline Mat averaging_projector(int n, const FiniteSubgroup& gamma, const FiberRep& tau) {
  const int dim = tau.d * (n + 1);
  Mat p(dim, dim);
  for (const auto& k : gamma.elements) p = p + kron(tau(k), rho(n, k));
  p = Cyc(Rat(1, gamma.order())) * p;
  if (!(p * p == p)) throw std::domain_error("averaging_projector: not idempotent");
  return p;
}

// Exact basis (as matrix columns) of the fixed subspace.
inline Mat equivariant_basis(int n, const FiniteSubgroup& gamma, const FiberRep& tau) {
  return column_space(averaging_projector(n, gamma, tau));
}

// Character-theoretic dimension count, evaluated exactly.
inline int character_dimension(int n, const FiniteSubgroup& gamma, const FiberRep& tau) {
  Cyc total;
  for (const auto& k : gamma.elements) {
    Cyc tr_tau, tr_rho;
    const Mat t = tau(k);
    for (int i = 0; i < tau.d; ++i) tr_tau = tr_tau + t.at(i, i);
    const Mat r = rho(n, k);
    for (int i = 0; i <= n; ++i) tr_rho = tr_rho + r.at(i, i);
    total = total + tr_tau * tr_rho;
  }
  total = Cyc(Rat(1, gamma.order())) * total;
  if (!total.is_rational())
    throw std::domain_error("character_dimension: non-rational character sum");
  const Rat v = total.rational_value();
  if (!rat_is_integer(v) || v < 0)
    throw std::domain_error("character_dimension: count not a non-negative integer");
  return static_cast<int>(rat_num(v));
}

inline std::vector<int> hom_dimension_table(const FiniteSubgroup& gamma, const FiberRep& tau,
                                            int n_max) {
  std::vector<int> dims;
  dims.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    dims.push_back(equivariant_basis(n, gamma, tau).cols());
  return dims;
}

}  // namespace harmeig
