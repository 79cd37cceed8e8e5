#include <catch2/catch_amalgamated.hpp>

#include "harmeig/catalog.hpp"
#include "harmeig/oracle.hpp"
#include "harmeig/solver.hpp"

#include <complex>
#include <random>
#include <vector>

using namespace harmeig;

namespace {

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// float blocks restricted to the numerically computed invariant subspace
int float_restricted_nullity(OpFamily family, const std::string& fiber_kind,
                             int d, const Frame& frame,
                             const FiniteSubgroup& gamma, int n, double alpha) {
  const CMat p = float_projector(n, gamma, fiber_kind, frame, d);
  const CMat c = float_invariant_basis(p);
  if (c.cols() == 0) return 0;
  const CMat b = float_block(family, n, frame);
  return float_nullity(CMat(c.adjoint() * b * c), alpha);
}

std::vector<std::pair<OpFamily, Frame>> comparison_ops() {
  std::vector<std::pair<OpFamily, Frame>> out;
  for (const Frame& f : catalog_su2_frames())
    for (OpFamily fam : {OpFamily::laplacian, OpFamily::rot, OpFamily::grad,
                         OpFamily::divergence, OpFamily::dirac_se,
                         OpFamily::dirac_sine})
      out.emplace_back(fam, f);
  out.emplace_back(OpFamily::dirac_a3, frame_a3());
  return out;
}

OperatorSpec spec_for(OpFamily family, const Frame& frame) {
  switch (family) {
    case OpFamily::laplacian: return op_laplacian(frame);
    case OpFamily::rot: return op_rot(frame);
    case OpFamily::grad: return op_grad(frame);
    case OpFamily::divergence: return op_div(frame);
    case OpFamily::dirac_se: return op_dirac_se(frame);
    case OpFamily::dirac_sine: return op_dirac_sine(frame);
    case OpFamily::dirac_a3: return op_dirac_a3();
    case OpFamily::custom: break;
  }
  throw std::domain_error("spec_for: unsupported family");
}

}  // namespace

TEST_CASE("float blocks match the exact blocks after basis transport") {
  for (const auto& [family, frame] : comparison_ops()) {
    for (int n = 0; n <= 10; ++n) {
      const OperatorSpec op = spec_for(family, frame);
      const CMat exact = transport_exact_block(op, n);
      const CMat fl = float_block(family, n, frame);
      INFO(op_family_name(family) << " frame " << frame.label << " n=" << n);
      REQUIRE(max_abs(exact - fl) < 1e-9);
    }
  }
}

TEST_CASE("round-frame laplacian block is the Casimir scalar") {
  for (int n = 0; n <= 12; ++n) {
    const CMat b = float_block(OpFamily::laplacian, n, frame_round());
    const CMat want = double(n * (n + 2)) * CMat::Identity(n + 1, n + 1);
    REQUIRE(max_abs(b - want) < 1e-10);
  }
}

TEST_CASE("float curl blocks are Hermitian") {
  for (const Frame& f : catalog_su2_frames())
    for (int n = 0; n <= 10; ++n) {
      const CMat b = float_block(OpFamily::rot, n, f);
      INFO("frame " << f.label << " n=" << n);
      REQUIRE(max_abs(b - CMat(b.adjoint())) < 1e-10);
    }
}

TEST_CASE("float representation matrices are unitary homomorphisms") {
  const FiniteSubgroup d3 = subgroup_d3star();
  for (int n : {1, 3, 6}) {
    for (const SU2Elem& g : d3.elements) {
      const CMat r = float_rho(n, g);
      REQUIRE(max_abs(CMat(r.adjoint() * r) -
                      CMat(CMat::Identity(n + 1, n + 1))) < 1e-12);
    }
    for (const SU2Elem& g : d3.generators)
      for (const SU2Elem& h : d3.generators) {
        const CMat lhs = float_rho(n, g * h);
        const CMat rhs = float_rho(n, g) * float_rho(n, h);
        REQUIRE(max_abs(lhs - rhs) < 1e-12);
      }
  }
}

TEST_CASE("float fiber action matches the exact graded fiber") {
  const Frame f = frame_l1();
  const FiniteSubgroup d3 = subgroup_d3star();
  const FiberRep exact = fiber_adjoint_in_frame(f, d3);
  const double p = std::sqrt(rat_to_double(f.p_sq));
  const int grade[3] = {0, 0, 1};
  for (const SU2Elem& g : d3.elements) {
    const Mat em = exact(g);
    const CMat fm = float_fiber("adjoint", f, g, 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const std::complex<double> want =
            em.at(r, c).to_float() * std::pow(p, grade[c] - grade[r]);
        REQUIRE(std::abs(fm(r, c) - want) < 1e-12);
      }
  }
  for (const SU2Elem& g : d3.generators)
    for (const SU2Elem& h : d3.generators) {
      const CMat lhs = float_fiber("adjoint", f, g * h, 3);
      const CMat rhs = float_fiber("adjoint", f, g, 3) * float_fiber("adjoint", f, h, 3);
      REQUIRE(max_abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("schur orthogonality of matrix coefficients, sampled") {
  REQUIRE(schur_orthogonality_check(0, 1, 100000) < 2e-2);
  REQUIRE(schur_orthogonality_check(1, 1, 100000) < 2e-2);
  REQUIRE(schur_orthogonality_check(1, 2, 40000) < 5e-2);
}

TEST_CASE("gap-certified nullity semantics") {
  const CMat id = CMat::Identity(5, 5);
  REQUIRE(float_nullity(id, 1.0) == 5);
  REQUIRE(float_nullity(id, 0.0) == 0);

  CMat close = CMat::Zero(2, 2);
  close(0, 0) = 1e-9;
  close(1, 1) = 1e-4;
  REQUIRE_THROWS_AS(float_nullity(close, 0.0), IndeterminateRankError);

  CMat clean = CMat::Zero(2, 2);
  clean(1, 1) = 1e-4;
  REQUIRE(float_nullity(clean, 0.0) == 1);
}

TEST_CASE("direct operator block nullities match the exact solver") {
  const Problem pr(frame_a3(), op_dirac_a3(), Rat(-1), subgroup_trivial(),
                   fiber_trivial(4));
  const SolutionSpace space = solve(pr);
  REQUIRE(space.certified);
  long long total = 0;
  for (const auto& b : space.blocks) {
    const CMat fb = float_block(OpFamily::dirac_a3, b.n, frame_a3());
    const int fn = float_nullity(fb, -1.0);
    INFO("n=" << b.n);
    REQUIRE(fn == b.nullity);
    total += static_cast<long long>(b.n + 1) * fn;
  }
  REQUIRE(total == 34);
}

TEST_CASE("restricted float blocks reproduce equivariant nullities") {
  const FiniteSubgroup z3 = subgroup_z3();
  const Frame f = frame_a2();

  SECTION("scalar problem") {
    const Problem pr(f, op_laplacian(f), Rat(8), z3, fiber_trivial(1));
    const SolutionSpace space = solve(pr);
    for (const auto& b : space.blocks) {
      const CMat p = float_projector(b.n, z3, "trivial", f, 1);
      const CMat c = float_invariant_basis(p);
      REQUIRE(c.cols() == equivariant_basis(b.n, z3, fiber_trivial(1)).cols());
      const int fn = float_restricted_nullity(OpFamily::laplacian, "trivial", 1,
                                              f, z3, b.n, 8.0);
      INFO("n=" << b.n);
      REQUIRE(fn == b.nullity);
    }
  }

  SECTION("vector problem") {
    const Problem pr(f, op_rot(f), Rat(-2), z3, fiber_adjoint_in_frame(f, z3));
    const SolutionSpace space = solve(pr);
    long long total = 0;
    for (const auto& b : space.blocks) {
      const int fn = float_restricted_nullity(OpFamily::rot, "adjoint", 3, f,
                                              z3, b.n, -2.0);
      INFO("n=" << b.n);
      REQUIRE(fn == b.nullity);
      total += static_cast<long long>(b.n + 1) * fn;
    }
    REQUIRE(total == 11);
  }
}

TEST_CASE("float torus blocks match the exact characters") {
  const TorusOp lap = torus_op_laplacian();
  const TorusOp rot = torus_op_rot();
  for (const Gamma3& g : lattice_enumerate(Rat(8))) {
    const Mat exact = torus_block(lap, g);
    const CMat fl = float_torus_block(OpFamily::laplacian, g);
    REQUIRE(std::abs(exact.at(0, 0).to_float() - fl(0, 0)) < 1e-12);
  }
  long long null_total = 0;
  for (const Gamma3& g : lattice_enumerate(Rat(4))) {
    const Mat exact = torus_block(rot, g);
    const CMat fl = float_torus_block(OpFamily::rot, g);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        REQUIRE(std::abs(exact.at(r, c).to_float() - fl(r, c)) < 1e-12);
    null_total += float_nullity(fl, -2.0);
  }
  REQUIRE(null_total == 6);

  long long lap_total = 0;
  for (const Gamma3& g : lattice_enumerate(Rat(8)))
    lap_total += float_nullity(float_torus_block(OpFamily::laplacian, g), 8.0);
  REQUIRE(lap_total == 12);
}

TEST_CASE("perturbed singular blocks lose their kernel detectably") {
  CMat b = float_block(OpFamily::dirac_a3, 6, frame_a3());
  for (int j = 0; j < b.rows(); ++j) b(j, j) += 1.0;  // kernel of B + I
  REQUIRE(float_nullity(b, 0.0) == 2);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat noise(b.rows(), b.cols());
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      noise(r, c) = std::complex<double>(u(rng), u(rng));
  REQUIRE(float_nullity(CMat(b + 1e-3 * noise), 0.0) == 0);
}
