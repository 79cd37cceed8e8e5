#pragma once

// Invariant differential operators as formal sums
//   sum_t  C_t (x) e_{w_1} e_{w_2} ... ,   deg <= 2,
// where C_t is a fiber matrix and the word multiplies left to right. Blocks
// are realized on V_n by substituting e_i -> scale_i * drho(E_i).
//
// Graded fiber coordinates: each fiber slot carries a weight in {0, 1}; a
// slot of weight 1 is rescaled by p. After this diagonal conjugation every
// block entry carries p only through p^2, so blocks stay inside the
// cyclotomic field even when p itself is irrational over it. Eigenvalue and
// nullity data are unchanged by the conjugation. Well-formedness of an
// operator requires the p-parity of every entry to balance:
//   #(word letters in {e1, e2}) + grade_out(row) - grade_in(col)  is even.

#include "harmeig/cyclotomic.hpp"
#include "harmeig/frames.hpp"
#include "harmeig/linalg.hpp"
#include "harmeig/su2.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace harmeig {

enum class OpFamily {
  laplacian,
  rot,
  grad,
  divergence,
  dirac_se,
  dirac_sine,
  dirac_a3,
  custom,
};

inline std::string op_family_name(OpFamily f) {
  switch (f) {
    case OpFamily::laplacian: return "laplacian";
    case OpFamily::rot: return "rot";
    case OpFamily::grad: return "grad";
    case OpFamily::divergence: return "div";
    case OpFamily::dirac_se: return "dirac_SE";
    case OpFamily::dirac_sine: return "dirac_sine";
    case OpFamily::dirac_a3: return "dirac_A3";
    case OpFamily::custom: return "custom";
  }
  return "?";
}

struct OpTerm {
  Mat coeff;              // d_out x d_in fiber matrix
  std::vector<int> word;  // frame indices in {0, 1, 2}, length <= 2
};

struct OperatorSpec {
  OpFamily family = OpFamily::custom;
  Frame frame;
  int d_in = 1, d_out = 1;
  std::vector<int> grade_in, grade_out;  // p-weights per fiber slot
  std::vector<OpTerm> terms;

  explicit OperatorSpec(Frame f) : frame(std::move(f)) {}
};

namespace detail {

inline int p_letters(const std::vector<int>& word) {
  int c = 0;
  for (int s : word)
    if (s == 0 || s == 1) ++c;
  return c;
}

inline int q_letters(const std::vector<int>& word) {
  int c = 0;
  for (int s : word)
    if (s == 2) ++c;
  return c;
}

}  // namespace detail

inline void validate_operator(const OperatorSpec& op) {
  if (op.d_in <= 0 || op.d_out <= 0) throw std::domain_error("operator: empty fiber");
  if (static_cast<int>(op.grade_in.size()) != op.d_in ||
      static_cast<int>(op.grade_out.size()) != op.d_out)
    throw std::domain_error("operator: grading size mismatch");
  for (int g : op.grade_in)
    if (g != 0 && g != 1) throw std::domain_error("operator: grades must be 0/1");
  for (int g : op.grade_out)
    if (g != 0 && g != 1) throw std::domain_error("operator: grades must be 0/1");
  for (const auto& t : op.terms) {
    if (t.coeff.rows() != op.d_out || t.coeff.cols() != op.d_in)
      throw std::domain_error("operator: term shape mismatch");
    if (t.word.size() > 2) throw std::domain_error("operator: degree above 2");
    for (int s : t.word)
      if (s < 0 || s > 2) throw std::domain_error("operator: bad frame index");
    const int pl = detail::p_letters(t.word);
    for (int r = 0; r < op.d_out; ++r)
      for (int c = 0; c < op.d_in; ++c) {
        if (t.coeff.at(r, c).is_zero()) continue;
        if ((pl + op.grade_out[r] - op.grade_in[c]) % 2 != 0)
          throw std::domain_error("operator: unbalanced p-parity at (" +
                                  std::to_string(r) + "," + std::to_string(c) + ")");
      }
  }
}

// Block of the operator on V_n (x) fiber, fiber-major layout:
// index = slot * (n+1) + monomial. Exact over the cyclotomic field.
inline Mat block_matrix(const OperatorSpec& op, int n) {
  if (n < 0) throw std::domain_error("block_matrix: n < 0");
  const int dim = n + 1;
  Mat b(op.d_out * dim, op.d_in * dim);
  for (const auto& t : op.terms) {
    Mat w = Mat::identity(dim);
    for (int s : t.word) w = w * drho(n, static_cast<LieElem>(s));
    const int pl = detail::p_letters(t.word);
    const int ql = detail::q_letters(t.word);
    for (int r = 0; r < op.d_out; ++r)
      for (int c = 0; c < op.d_in; ++c) {
        if (t.coeff.at(r, c).is_zero()) continue;
        const int ppow2 = pl + op.grade_out[r] - op.grade_in[c];
        if (ppow2 % 2 != 0 || ppow2 < 0)
          throw std::domain_error("block_matrix: unbalanced p-parity");
        Rat scale(1);
        for (int j = 0; j < ppow2 / 2; ++j) scale *= op.frame.p_sq;
        for (int j = 0; j < ql; ++j) scale *= op.frame.q;
        const Cyc factor = scale * t.coeff.at(r, c);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            if (w.at(i, j).is_zero()) continue;
            b.at(r * dim + i, c * dim + j) += factor * w.at(i, j);
          }
      }
  }
  return b;
}

// Same block with an explicit frame; the frame must match the one the
// operator was assembled for.
inline Mat block_matrix(const OperatorSpec& op, int n, const Frame& frame) {
  if (frame != op.frame)
    throw std::domain_error("block_matrix: frame mismatch");
  return block_matrix(op, n);
}

namespace detail {

inline void add_term(OperatorSpec& op, int r, int c, const Cyc& coeff,
                     std::vector<int> word) {
  OpTerm t{Mat(op.d_out, op.d_in), std::move(word)};
  t.coeff.at(r, c) = coeff;
  op.terms.push_back(std::move(t));
}

}  // namespace detail

// Scalar Laplacian -sum_i e_i e_i. Acts diagonally on each weight line with
// eigenvalue (q^2 - p^2)(n - 2k)^2 + p^2 n (n + 2).
inline OperatorSpec op_laplacian(const Frame& frame) {
  OperatorSpec op(frame);
  op.family = OpFamily::laplacian;
  op.d_in = op.d_out = 1;
  op.grade_in = {1};
  op.grade_out = {1};
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, 0, 0, Cyc(Rat(-1)), {i, i});
  validate_operator(op);
  return op;
}

// Curl-type operator on vector fields (coordinates in the frame basis):
//   first-order part ((0, -e3, e2), (e3, 0, -e1), (-e2, e1, 0)),
//   constant part   -diag(2q, 2q, 2 p^2 / q).
inline OperatorSpec op_rot(const Frame& frame) {
  OperatorSpec op(frame);
  op.family = OpFamily::rot;
  op.d_in = op.d_out = 3;
  op.grade_in = {0, 0, 1};
  op.grade_out = {0, 0, 1};
  const Cyc one = Cyc::one();
  detail::add_term(op, 0, 1, -one, {2});
  detail::add_term(op, 0, 2, one, {1});
  detail::add_term(op, 1, 0, one, {2});
  detail::add_term(op, 1, 2, -one, {0});
  detail::add_term(op, 2, 0, -one, {1});
  detail::add_term(op, 2, 1, one, {0});
  detail::add_term(op, 0, 0, Cyc(-2 * frame.q), {});
  detail::add_term(op, 1, 1, Cyc(-2 * frame.q), {});
  detail::add_term(op, 2, 2, Cyc(-2 * frame.p_sq / frame.q), {});
  validate_operator(op);
  return op;
}

// Gradient: f -> (e_1 f, e_2 f, e_3 f) in frame coordinates.
inline OperatorSpec op_grad(const Frame& frame) {
  OperatorSpec op(frame);
  op.family = OpFamily::grad;
  op.d_in = 1;
  op.d_out = 3;
  op.grade_in = {1};
  op.grade_out = {0, 0, 1};
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, i, 0, Cyc::one(), {i});
  validate_operator(op);
  return op;
}

// Divergence: v -> sum_i e_i v_i. Exact only when the frame's connection
// correction vanishes; that is a checked precondition.
inline OperatorSpec op_div(const Frame& frame) {
  if (!frame.divergence_correction_vanishes())
    throw std::domain_error("op_div: frame has nonvanishing divergence correction");
  OperatorSpec op(frame);
  op.family = OpFamily::divergence;
  op.d_in = 3;
  op.d_out = 1;
  op.grade_in = {0, 0, 1};
  op.grade_out = {1};
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, 0, i, Cyc::one(), {i});
  validate_operator(op);
  return op;
}

// First-order operator on (vector field, function) pairs:
//   (v, f) -> (-grad f + rot v + v, div v + 3 f).
inline OperatorSpec op_dirac_se(const Frame& frame) {
  OperatorSpec op(frame);
  op.family = OpFamily::dirac_se;
  op.d_in = op.d_out = 4;
  op.grade_in = {0, 0, 1, 1};
  op.grade_out = {0, 0, 1, 1};
  const Cyc one = Cyc::one();
  // rot block
  detail::add_term(op, 0, 1, -one, {2});
  detail::add_term(op, 0, 2, one, {1});
  detail::add_term(op, 1, 0, one, {2});
  detail::add_term(op, 1, 2, -one, {0});
  detail::add_term(op, 2, 0, -one, {1});
  detail::add_term(op, 2, 1, one, {0});
  detail::add_term(op, 0, 0, Cyc(Rat(1) - 2 * frame.q), {});
  detail::add_term(op, 1, 1, Cyc(Rat(1) - 2 * frame.q), {});
  detail::add_term(op, 2, 2, Cyc(Rat(1) - 2 * frame.p_sq / frame.q), {});
  // -grad on the function slot
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, i, 3, -one, {i});
  // div into the function slot, plus 3 f
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, 3, i, one, {i});
  detail::add_term(op, 3, 3, Cyc(Rat(3)), {});
  validate_operator(op);
  return op;
}

// First-order operator on (vector field, function) pairs:
//   (v, f) -> (-grad f - rot v + 2 v, div v).
inline OperatorSpec op_dirac_sine(const Frame& frame) {
  OperatorSpec op(frame);
  op.family = OpFamily::dirac_sine;
  op.d_in = op.d_out = 4;
  op.grade_in = {0, 0, 1, 1};
  op.grade_out = {0, 0, 1, 1};
  const Cyc one = Cyc::one();
  // -rot block
  detail::add_term(op, 0, 1, one, {2});
  detail::add_term(op, 0, 2, -one, {1});
  detail::add_term(op, 1, 0, -one, {2});
  detail::add_term(op, 1, 2, one, {0});
  detail::add_term(op, 2, 0, one, {1});
  detail::add_term(op, 2, 1, -one, {0});
  detail::add_term(op, 0, 0, Cyc(Rat(2) + 2 * frame.q), {});
  detail::add_term(op, 1, 1, Cyc(Rat(2) + 2 * frame.q), {});
  detail::add_term(op, 2, 2, Cyc(Rat(2) + 2 * frame.p_sq / frame.q), {});
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, i, 3, -one, {i});
  for (int i = 0; i < 3; ++i)
    detail::add_term(op, 3, i, one, {i});
  validate_operator(op);
  return op;
}

// The 4x4 first-order operator tied to the squashed frame p^2 = 1/7, q = 1:
//   ((0, -e3, e2, -e1), (e3, 0, -e1, -e2), (-e2, e1, 0, -e3), (e1, e2, e3, 0))
//   + diag(-15/7, -15/7, 3, 3).
inline OperatorSpec op_dirac_a3() {
  const Frame frame(Rat(1, 7), Rat(1), "squashed-1/7");
  OperatorSpec op(frame);
  op.family = OpFamily::dirac_a3;
  op.d_in = op.d_out = 4;
  op.grade_in = {0, 0, 1, 1};
  op.grade_out = {0, 0, 1, 1};
  const Cyc one = Cyc::one();
  detail::add_term(op, 0, 1, -one, {2});
  detail::add_term(op, 0, 2, one, {1});
  detail::add_term(op, 0, 3, -one, {0});
  detail::add_term(op, 1, 0, one, {2});
  detail::add_term(op, 1, 2, -one, {0});
  detail::add_term(op, 1, 3, -one, {1});
  detail::add_term(op, 2, 0, -one, {1});
  detail::add_term(op, 2, 1, one, {0});
  detail::add_term(op, 2, 3, -one, {2});
  detail::add_term(op, 3, 0, one, {0});
  detail::add_term(op, 3, 1, one, {1});
  detail::add_term(op, 3, 2, one, {2});
  detail::add_term(op, 0, 0, Cyc(Rat(-15, 7)), {});
  detail::add_term(op, 1, 1, Cyc(Rat(-15, 7)), {});
  detail::add_term(op, 2, 2, Cyc(Rat(3)), {});
  detail::add_term(op, 3, 3, Cyc(Rat(3)), {});
  validate_operator(op);
  return op;
}

}  // namespace harmeig
