#include <catch2/catch_amalgamated.hpp>

#include "harmeig/solver.hpp"

#include <vector>

using namespace harmeig;

namespace {

std::vector<int> nullities(const SolutionSpace& s) {
  std::vector<int> out;
  for (const auto& b : s.blocks) out.push_back(b.nullity);
  return out;
}

Problem scalar_problem(const Frame& f, const Rat& lambda, const FiniteSubgroup& g) {
  return Problem(f, op_laplacian(f), lambda, g, fiber_trivial());
}

}  // namespace

TEST_CASE("certified cutoffs match the hand bounds") {
  const Frame round = frame_round(), a2 = frame_a2(), a3 = frame_a3();
  const FiniteSubgroup triv = subgroup_trivial();

  REQUIRE(certified_cutoff(scalar_problem(round, Rat(3), triv)) == 1);
  REQUIRE(certified_cutoff(scalar_problem(a2, Rat(8), subgroup_z3())) >= 6);

  const Problem rot_a2(a2, op_rot(a2), Rat(-2), subgroup_z3(),
                       fiber_adjoint_in_frame(a2, subgroup_z3()));
  REQUIRE(certified_cutoff(rot_a2) == 4);

  const Problem da3(a3, op_dirac_a3(), Rat(-1), triv, fiber_trivial(4));
  REQUIRE(certified_cutoff(da3) == 6);

  SECTION("families without a rule refuse to certify") {
    const Problem dse(a2, op_dirac_se(a2), Rat(-1), subgroup_z3(),
                      fiber_normal_in_frame(a2, subgroup_z3()));
    REQUIRE_THROWS_AS(certified_cutoff(dse), UncertifiedError);
    const Problem rot0(round, op_rot(round), Rat(0), triv,
                       fiber_adjoint_in_frame(round, triv));
    REQUIRE_THROWS_AS(certified_cutoff(rot0), UncertifiedError);
  }
}

TEST_CASE("scalar eigenspace dimensions across the catalog") {
  struct Case {
    Frame frame;
    FiniteSubgroup gamma;
    Rat lambda;
    long long dim;
  };
  const std::vector<Case> cases{
      {frame_round(), subgroup_trivial(), Rat(3), 4},
      {frame_a2(), subgroup_z3(), Rat(8), 19},
      {frame_l1(), subgroup_trivial(), Rat(3), 7},
      {frame_l2(), subgroup_z2(), Rat(3), 6},
      {frame_l3(), subgroup_a4star(), Rat(3), 7},
      {frame_l4(), subgroup_d3star(), Rat(3), 7},
  };
  for (const auto& c : cases) {
    const SolutionSpace s = solve(scalar_problem(c.frame, c.lambda, c.gamma));
    REQUIRE(s.certified);
    REQUIRE(s.conjugation_closed);
    REQUIRE(s.complex_dim == c.dim);
    REQUIRE(s.real_dim.has_value());
    REQUIRE(*s.real_dim == c.dim);
  }
}

TEST_CASE("block structure of the quotient scalar problems") {
  SECTION("berger third frame at level eight") {
    const SolutionSpace s = solve(scalar_problem(frame_a2(), Rat(8), subgroup_z3()));
    REQUIRE(s.n_max >= 6);
    for (const auto& b : s.blocks) {
      if (b.n == 4)
        REQUIRE(b.nullity == 1);
      else if (b.n == 6)
        REQUIRE(b.nullity == 2);
      else
        REQUIRE(b.nullity == 0);
    }
  }
  SECTION("first Lagrangian frame splits over two levels") {
    const SolutionSpace s =
        solve(scalar_problem(frame_l1(), Rat(3), subgroup_trivial()));
    for (const auto& b : s.blocks) {
      if (b.n == 1)
        REQUIRE(b.nullity == 2);
      else if (b.n == 2)
        REQUIRE(b.nullity == 1);
      else
        REQUIRE(b.nullity == 0);
    }
  }
}

TEST_CASE("curl eigenfields on the berger third frame") {
  const Frame a2 = frame_a2();
  const FiniteSubgroup z3 = subgroup_z3();
  const Problem pr(a2, op_rot(a2), Rat(-2), z3, fiber_adjoint_in_frame(a2, z3));
  const SolutionSpace s = solve(pr);
  REQUIRE(s.certified);
  REQUIRE(s.complex_dim == 11);
  REQUIRE(s.real_dim.has_value());
  REQUIRE(*s.real_dim == 11);
  REQUIRE(nullities(s) == std::vector<int>{1, 0, 0, 0, 2});
}

TEST_CASE("squashed-frame first-order system") {
  const Problem pr(frame_a3(), op_dirac_a3(), Rat(-1), subgroup_trivial(),
                   fiber_trivial(4));
  const SolutionSpace s = solve(pr);
  REQUIRE(s.certified);
  REQUIRE(s.n_max == 6);
  REQUIRE(nullities(s) == std::vector<int>{0, 0, 0, 0, 4, 0, 2});
  REQUIRE(s.complex_dim == 34);
  REQUIRE(*s.real_dim == 34);
}

TEST_CASE("perturbing the berger parameter collapses the eigenspace") {
  const Frame f(Rat(1, 3), Rat(1, 2), "perturbed");
  const SolutionSpace s = solve(scalar_problem(f, Rat(8), subgroup_z3()));
  REQUIRE(s.complex_dim == 5);
  REQUIRE(s.complex_dim != 19);
}

TEST_CASE("manual cutoffs above the certificate find nothing new") {
  const Frame a2 = frame_a2();
  const FiniteSubgroup z3 = subgroup_z3();
  std::vector<Problem> probs{
      scalar_problem(a2, Rat(8), z3),
      Problem(a2, op_rot(a2), Rat(-2), z3, fiber_adjoint_in_frame(a2, z3)),
      Problem(frame_a3(), op_dirac_a3(), Rat(-1), subgroup_trivial(),
              fiber_trivial(4)),
  };
  for (Problem& pr : probs) {
    const SolutionSpace base = solve(pr);
    Problem extended = pr;
    extended.manual_cutoff = base.n_max + 4;
    const SolutionSpace wide = solve(extended);
    REQUIRE(!wide.certified);
    REQUIRE(wide.complex_dim == base.complex_dim);
    for (int n = base.n_max + 1; n <= wide.n_max; ++n)
      REQUIRE(wide.blocks[n].nullity == 0);
  }
}

TEST_CASE("pair operator dimension splits into scalar and vector parts") {
  SECTION("berger third frame") {
    const Frame a2 = frame_a2();
    const FiniteSubgroup z3 = subgroup_z3();
    const long long lap = solve(scalar_problem(a2, Rat(8), z3)).complex_dim;
    const long long rot =
        solve(Problem(a2, op_rot(a2), Rat(-2), z3, fiber_adjoint_in_frame(a2, z3)))
            .complex_dim;
    Problem pair(a2, op_dirac_se(a2), Rat(-1), z3, fiber_normal_in_frame(a2, z3));
    REQUIRE_THROWS_AS(solve(pair), UncertifiedError);
    pair.manual_cutoff = 8;
    const SolutionSpace s = solve(pair);
    REQUIRE(!s.certified);
    REQUIRE(s.complex_dim == lap + rot);
    REQUIRE(s.complex_dim == 30);
    REQUIRE(nullities(s) == std::vector<int>{1, 0, 0, 0, 3, 0, 2, 0, 0});
  }
  SECTION("round frame with the sign-flipped pair operator") {
    const Frame round = frame_round();
    const FiniteSubgroup triv = subgroup_trivial();
    const long long lap = solve(scalar_problem(round, Rat(3), triv)).complex_dim;
    const long long rot =
        solve(Problem(round, op_rot(round), Rat(3), triv,
                      fiber_adjoint_in_frame(round, triv)))
            .complex_dim;
    REQUIRE(lap == 4);
    REQUIRE(rot == 8);
    Problem pair(round, op_dirac_sine(round), Rat(-1), triv, fiber_trivial(4));
    pair.manual_cutoff = 5;
    const SolutionSpace s = solve(pair);
    REQUIRE(s.complex_dim == lap + rot);
  }
}

TEST_CASE("solution bases satisfy the eigenequation exactly") {
  const Frame a2 = frame_a2();
  const FiniteSubgroup z3 = subgroup_z3();
  const Problem pr(a2, op_rot(a2), Rat(-2), z3, fiber_adjoint_in_frame(a2, z3));
  const SolutionSpace s = solve(pr);
  for (const auto& b : s.blocks) {
    if (b.nullity == 0) continue;
    Mat a = block_matrix(pr.op, b.n);
    const Cyc alpha(pr.alpha);
    for (int i = 0; i < a.rows(); ++i) a.at(i, i) = a.at(i, i) - alpha;
    REQUIRE((a * b.basis).is_zero());
  }
}

TEST_CASE("conjugation pairs the extreme weight vectors") {
  const SolutionSpace s = solve(scalar_problem(frame_a2(), Rat(8), subgroup_z3()));
  const auto& b6 = s.blocks[6];
  REQUIRE(b6.nullity == 2);
  // the two kernel vectors sit at the weight extremes k = 0 and k = 6
  const Mat conj = [&] {
    Mat m = b6.basis;
    Mat out(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
      for (int j = 0; j <= 6; ++j) {
        const Cyc v = m.at(6 - j, c).conj();
        out.at(j, c) = ((6 - j) % 2 == 0) ? v : -v;
      }
    return out;
  }();
  for (int c = 0; c < 2; ++c) REQUIRE(in_span(b6.basis, conj.col(c)));
  // supports swap: a vector supported at k = 0 maps to one supported at k = 6
  int support0 = -1, support6 = -1;
  for (int c = 0; c < 2; ++c) {
    if (!b6.basis.at(0, c).is_zero()) support0 = c;
    if (!b6.basis.at(6, c).is_zero()) support6 = c;
  }
  REQUIRE(support0 >= 0);
  REQUIRE(support6 >= 0);
  REQUIRE(support0 != support6);
}

TEST_CASE("parallel solve is deterministic") {
  const Frame a2 = frame_a2();
  const FiniteSubgroup z3 = subgroup_z3();
  const Problem pr(a2, op_rot(a2), Rat(-2), z3, fiber_adjoint_in_frame(a2, z3));
  const SolutionSpace serial = solve(pr, false);
  const SolutionSpace parallel = solve(pr, true);
  REQUIRE(serial.complex_dim == parallel.complex_dim);
  REQUIRE(serial.blocks.size() == parallel.blocks.size());
  for (size_t i = 0; i < serial.blocks.size(); ++i) {
    REQUIRE(serial.blocks[i].nullity == parallel.blocks[i].nullity);
    REQUIRE(serial.blocks[i].basis == parallel.blocks[i].basis);
  }
}
