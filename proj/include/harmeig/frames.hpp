#pragma once

// Left-invariant orthonormal frames on SU(2) metrics of Berger type.
//
// The frame is e1 = p E1, e2 = p E2, e3 = q E3 (declared orthonormal), with
// p^2 and q rational. Brackets:
//   [e1, e2] = (2 p^2 / q) e3,  [e1, e3] = -2q e2,  [e2, e3] = 2q e1.
// Only p^2 enters any exact computation; p itself is never formed.

#include "harmeig/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace harmeig {

struct Frame {
  Rat p_sq;
  Rat q;
  std::string label;

  Frame(Rat p_squared, Rat q_scale, std::string name = "")
      : p_sq(std::move(p_squared)), q(std::move(q_scale)), label(std::move(name)) {
    if (p_sq <= 0) throw std::domain_error("Frame: p^2 must be positive");
    if (q == 0) throw std::domain_error("Frame: q must be nonzero");
  }

  // Structure constants: [e_i, e_j] = sum_k c(i, j, k) e_k, 0-indexed.
  Rat c(int i, int j, int k) const {
    auto val = [this](int a, int b, int d) -> Rat {
      if (a == 0 && b == 1 && d == 2) return 2 * p_sq / q;
      if (a == 0 && b == 2 && d == 1) return -2 * q;
      if (a == 1 && b == 2 && d == 0) return 2 * q;
      return Rat(0);
    };
    if (i < 0 || i > 2 || j < 0 || j > 2 || k < 0 || k > 2)
      throw std::out_of_range("Frame::c");
    if (i == j) return Rat(0);
    if (i < j) return val(i, j, k);
    return -val(j, i, k);
  }

  // True for unimodular frames: sum_i c(i, k, i) = 0 for every k, which is
  // what makes the naive divergence formula exact.
  bool divergence_correction_vanishes() const {
    for (int k = 0; k < 3; ++k) {
      Rat s(0);
      for (int i = 0; i < 3; ++i) s += c(i, k, i);
      if (s != 0) return false;
    }
    return true;
  }

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.p_sq == b.p_sq && a.q == b.q;
  }
  friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }
};

inline Frame frame_round() { return Frame(Rat(1), Rat(1), "round"); }

// Catalog frames for the quotient cases. Labels follow the case names.
inline Frame frame_a2() { return Frame(Rat(1, 3), Rat(1, 3), "A2"); }
inline Frame frame_a3() { return Frame(Rat(1, 7), Rat(1), "A3"); }
inline Frame frame_l1() { return Frame(Rat(3, 8), Rat(3, 2), "L1"); }
inline Frame frame_l2() { return Frame(Rat(1, 2), Rat(1, 2), "L2"); }
inline Frame frame_l3() { return Frame(Rat(1, 16), Rat(1, 4), "L3"); }
inline Frame frame_l4() { return Frame(Rat(1, 6), Rat(1, 6), "L4"); }

inline std::vector<Frame> catalog_su2_frames() {
  return {frame_round(), frame_a2(), frame_a3(), frame_l1(),
          frame_l2(),    frame_l3(), frame_l4()};
}

}  // namespace harmeig
