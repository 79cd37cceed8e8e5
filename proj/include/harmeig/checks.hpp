#pragma once

// Named end-to-end self-checks, shared by the `verify` subcommand and the
// acceptance runner. Each check re-derives one documented property of the
// library from scratch and reports pass/fail plus a one-line detail; the
// registry order is the order they are meant to be read in.

#include "harmeig/catalog.hpp"
#include "harmeig/oracle.hpp"
#include "harmeig/solver.hpp"
#include "harmeig/torus.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace harmeig {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct NamedCheck {
  std::string name;
  std::string summary;
  std::function<CheckResult()> run;
};

// Float-oracle cross-check of one solved problem: recompute every block
// nullity on the float side with gap certification and compare. Returns the
// empty string on agreement, otherwise a one-line description of the first
// divergence (an indeterminate float rank counts as divergence).
inline std::string oracle_disagreement_su2(OpFamily family,
                                           const std::string& fiber_kind,
                                           const Frame& frame,
                                           const FiniteSubgroup& gamma,
                                           const Rat& alpha,
                                           const SolutionSpace& s) {
  const int d = family == OpFamily::laplacian ? 1
                : family == OpFamily::rot     ? 3
                                              : 4;
  for (const BlockSolution& b : s.blocks) {
    int fn = 0;
    try {
      const CMat proj = float_projector(b.n, gamma, fiber_kind, frame, d);
      const CMat c = float_invariant_basis(proj);
      if (c.cols() > 0) {
        const CMat fb = float_block(family, b.n, frame);
        fn = float_nullity(CMat(c.adjoint() * fb * c), rat_to_double(alpha));
      }
    } catch (const IndeterminateRankError& e) {
      return std::string("indeterminate float rank at n = ") +
             std::to_string(b.n) + ": " + e.what();
    }
    if (fn != b.nullity) {
      std::ostringstream os;
      os << "oracle nullity mismatch (" << op_family_name(family)
         << ") at n = " << b.n << ": float " << fn << ", exact " << b.nullity;
      return os.str();
    }
  }
  return "";
}

inline std::string oracle_disagreement_torus(OpFamily family, const Rat& alpha,
                                             const TorusSolution& ts) {
  std::map<Gamma3, int> exact;
  for (const TorusPointBlock& pb : ts.points) exact[pb.gamma] = pb.nullity;
  if (ts.level < 0) return "";
  for (const Gamma3& gm : lattice_enumerate(ts.level)) {
    int fn = 0;
    try {
      fn = float_nullity(float_torus_block(family, gm), rat_to_double(alpha));
    } catch (const IndeterminateRankError& e) {
      return std::string("indeterminate float rank on a character: ") + e.what();
    }
    const auto it = exact.find(gm);
    if (fn != (it == exact.end() ? 0 : it->second)) {
      std::ostringstream os;
      os << "oracle nullity mismatch (" << op_family_name(family)
         << ") at frequency (" << gm[0] << "," << gm[1] << "," << gm[2]
         << "): float " << fn << ", exact " << (it == exact.end() ? 0 : it->second);
      return os.str();
    }
  }
  return "";
}

namespace checks_detail {

inline CheckResult fail(std::string msg) { return {false, std::move(msg)}; }
inline CheckResult ok(std::string msg) { return {true, std::move(msg)}; }

// 4x4-slot assembly from vector/vector, vector/function, function/vector and
// function/function blocks of matching irrep size.
inline Mat embed4(const Mat& vv, const Mat& vf, const Mat& fv, const Mat& ff) {
  const int d = ff.rows();
  Mat m(4 * d, 4 * d);
  for (int r = 0; r < 3 * d; ++r) {
    for (int c = 0; c < 3 * d; ++c) m.at(r, c) = vv.at(r, c);
    for (int c = 0; c < d; ++c) m.at(r, 3 * d + c) = vf.at(r, c);
  }
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < 3 * d; ++c) m.at(3 * d + r, c) = fv.at(r, c);
    for (int c = 0; c < d; ++c) m.at(3 * d + r, 3 * d + c) = ff.at(r, c);
  }
  return m;
}

inline Mat shift_diag(Mat m, const Rat& shift) {
  const Cyc s(shift);
  for (int i = 0; i < m.rows(); ++i) m.at(i, i) = m.at(i, i) + s;
  return m;
}

inline long long documented_dim(const std::string& id, OpFamily family) {
  static const std::map<std::string, std::map<std::string, long long>> want = {
      {"A1", {{"laplacian", 12}, {"rot", 6}}},
      {"A2", {{"laplacian", 19}, {"rot", 11}}},
      {"A3", {{"dirac_A3", 34}}},
      {"S3", {{"laplacian", 4}}},
      {"L1", {{"laplacian", 7}}},
      {"L2", {{"laplacian", 6}}},
      {"L3", {{"laplacian", 7}}},
      {"L4", {{"laplacian", 7}}},
  };
  const auto ci = want.find(id);
  if (ci == want.end()) return -1;
  const auto pi = ci->second.find(op_family_name(family));
  return pi == ci->second.end() ? -1 : pi->second;
}

inline CheckResult check_catalog_dimensions() {
  int problems = 0;
  for (const CaseRecord& rec : builtin_cases()) {
    const CaseResult cr = run_case(rec);
    if (!cr.all_matched)
      return fail("case " + rec.id + ": a documented dimension did not match");
    for (const ProblemResult& pr : cr.problems) {
      if (!pr.space.certified)
        return fail("case " + rec.id + ": uncertified cutoff in catalog run");
      const long long want = documented_dim(rec.id, pr.problem.family);
      if (want < 0) continue;  // derived entry, covered by the report check
      if (!pr.space.real_dim || *pr.space.real_dim != want) {
        std::ostringstream os;
        os << "case " << rec.id << " " << op_family_name(pr.problem.family)
           << ": got " << (pr.space.real_dim ? *pr.space.real_dim : -1)
           << ", documented " << want;
        return fail(os.str());
      }
      ++problems;
    }
  }
  std::ostringstream os;
  os << problems << " documented eigenspace dimensions reproduced exactly";
  return ok(os.str());
}

inline CheckResult check_rigidity_report() {
  const std::vector<ReportRow> rows = rigidity_report();
  std::map<std::string, ReportRow> by_id;
  for (const ReportRow& r : rows) by_id[r.id] = r;
  if (rows.size() != 8) return fail("report does not have 8 rows");

  auto expect = [&](const std::string& id, long long nontrivial,
                    const std::string& verdict) -> std::string {
    const auto it = by_id.find(id);
    if (it == by_id.end()) return id + ": row missing";
    const ReportRow& r = it->second;
    if (r.nontrivial != nontrivial)
      return id + ": nontrivial " + std::to_string(r.nontrivial) +
             " != " + std::to_string(nontrivial);
    if (r.verdict != verdict) return id + ": verdict '" + r.verdict + "'";
    if (r.total - r.trivial_dim != r.nontrivial) return id + ": arithmetic";
    return "";
  };
  std::string e;
  if (!(e = expect("A1", 0, "rigid")).empty()) return fail(e);
  if (!(e = expect("A2", 13, "not rigid")).empty()) return fail(e);
  if (!(e = expect("A3", 16, "not rigid")).empty()) return fail(e);
  for (const std::string id : {"S3", "L1", "L2", "L3", "L4"})
    if (!(e = expect(id, 0, "non-Lagrangian deformations trivial")).empty())
      return fail(e);
  if (by_id["A2"].annotation.find("30 - 6 - 15 + 4 = 13") == std::string::npos)
    return fail("A2 annotation lost the 30 - 6 - 15 + 4 = 13 breakdown");
  return ok("verdicts, remainders and the A2 budget breakdown all agree");
}

inline CheckResult check_subgroup_tables() {
  const FiniteSubgroup z2 = subgroup_z2(), z3 = subgroup_z3(),
                       a4 = subgroup_a4star(), d3 = subgroup_d3star();
  if (z2.order() != 2 || z3.order() != 3 || a4.order() != 24 || d3.order() != 12)
    return fail("subgroup closure orders are not 2/3/24/12");

  const auto tz2 = hom_dimension_table(z2, fiber_trivial(1), 12);
  const auto tz3 = hom_dimension_table(z3, fiber_trivial(1), 12);
  const auto ta4 = hom_dimension_table(a4, fiber_trivial(1), 12);
  const auto td3 = hom_dimension_table(d3, fiber_trivial(1), 12);

  for (int n = 0; n <= 12; ++n) {
    if (tz2[n] != (n % 2 == 0 ? n + 1 : 0))
      return fail("Z2 table breaks the even/odd rule at n = " + std::to_string(n));
    int mod3 = 0;
    for (int k = 0; k <= n; ++k)
      if (((n - 2 * k) % 3) == 0) ++mod3;
    if (tz3[n] != mod3)
      return fail("Z3 table breaks the mod-3 selection at n = " + std::to_string(n));
  }
  const std::vector<int> wa4 = {1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
  const std::vector<int> wd3 = {1, 0, 0, 0, 1, 0, 1, 0, 2, 0, 1, 0, 3};
  if (ta4 != wa4 || ta4[6] != 1) return fail("binary tetrahedral invariant table off");
  if (td3 != wd3) return fail("binary dihedral invariant table off");
  for (int n = 1; n <= 12; n += 2)
    if (td3[n] != 0) return fail("binary dihedral table nonzero at odd n");
  return ok("orders 2/3/24/12 and all invariant tables for n <= 12 reproduced");
}

inline CheckResult check_operator_identities() {
  // first-order calculus, blockwise and exact
  for (const Frame& f : catalog_su2_frames()) {
    const OperatorSpec g = op_grad(f), d = op_div(f), r = op_rot(f);
    for (int n = 0; n <= 8; ++n) {
      if (!(block_matrix(r, n) * block_matrix(g, n)).is_zero())
        return fail("rot grad != 0 on frame " + f.label);
      if (!(block_matrix(d, n) * block_matrix(r, n)).is_zero())
        return fail("div rot != 0 on frame " + f.label);
    }
  }

  // square identity for the pair operator, group side
  for (const Frame& f : {frame_round(), frame_a2()}) {
    const OperatorSpec dse = op_dirac_se(f);
    const OperatorSpec lap = op_laplacian(f), g = op_grad(f), dv = op_div(f),
                       r = op_rot(f);
    for (int n = 0; n <= 8; ++n) {
      const Mat b = block_matrix(dse, n);
      const Mat br = block_matrix(r, n), bg = block_matrix(g, n),
                bd = block_matrix(dv, n), bl = block_matrix(lap, n);
      const Mat vv = Mat::identity(3 * (n + 1)) + Rat(2) * Cyc::one() * br +
                     br * br - bg * bd;
      const Mat rhs = embed4(vv, Rat(-4) * Cyc::one() * bg, Cyc(Rat(4)) * bd,
                             bl + Cyc(Rat(9)) * Mat::identity(n + 1));
      const Mat id4 = Mat::identity(4 * (n + 1));
      const Cyc three(Rat(3));
      if (!((b - three * id4) * (b + id4) ==
            rhs - Cyc(Rat(2)) * b - three * id4))
        return fail("pair-operator square identity fails on frame " + f.label);
    }
  }

  // square identity and eigenspace decomposition, torus side, characterwise
  const TorusOp tl = torus_op_laplacian(), tg = torus_op_grad(),
                td = torus_op_div(), tr = torus_op_rot(), tse = torus_op_dirac_se();
  long long dse_total = 0;
  for (long long lam = 0; lam <= 20; ++lam) {
    for (const Gamma3& gm : lattice_enumerate(Rat(lam))) {
      const Mat b = torus_block(tse, gm);
      const Mat br = torus_block(tr, gm), bg = torus_block(tg, gm),
                bd = torus_block(td, gm), bl = torus_block(tl, gm);
      const Mat vv = Mat::identity(3) + Rat(2) * Cyc::one() * br + br * br -
                     bg * bd;
      const Mat rhs = embed4(vv, Rat(-4) * Cyc::one() * bg, Cyc(Rat(4)) * bd,
                             bl + Cyc(Rat(9)) * Mat::identity(1));
      const Mat id4 = Mat::identity(4);
      const Cyc three(Rat(3));
      if (!((b - three * id4) * (b + id4) == rhs - Cyc(Rat(2)) * b - three * id4))
        return fail("pair-operator square identity fails on a character");
      // per-character decomposition: kernel of (B + I) splits into the
      // curl eigenspace at -2 and the scalar eigenspace at 8
      const int nd = nullity(shift_diag(b, Rat(1)));
      const int nr = nullity(shift_diag(br, Rat(2)));
      const int nl = nullity(shift_diag(bl, Rat(-8)));
      if (nd != nr + nl)
        return fail("characterwise pair-eigenspace decomposition fails");
      dse_total += nd;
    }
  }
  if (dse_total != 18)
    return fail("flat-case pair eigenspace total " + std::to_string(dse_total) +
                " != 12 + 6");

  // eigenspace decomposition, group side: pair operator at -1 splits into
  // the scalar level and the curl level
  {
    const Frame f = frame_a2();
    const FiniteSubgroup z3 = subgroup_z3();
    Problem pr(f, op_dirac_se(f), Rat(-1), z3, fiber_normal_in_frame(f, z3));
    pr.manual_cutoff = 8;
    const SolutionSpace s = solve(pr);
    if (!s.real_dim || *s.real_dim != 30)
      return fail("pair operator at -1 on the cyclic quotient is not 30");
  }
  {
    const Frame f = frame_round();
    const FiniteSubgroup triv = subgroup_trivial();
    Problem pr(f, op_dirac_sine(f), Rat(-1), triv,
               fiber_normal_in_frame(f, triv));
    pr.manual_cutoff = 5;
    const SolutionSpace s = solve(pr);
    if (!s.real_dim || *s.real_dim != 12)
      return fail("cone pair operator at -1 on the round sphere is not 4 + 8");
  }
  return ok("calculus, square and decomposition identities hold exactly");
}

inline CheckResult check_oracle_agreement() {
  // per-problem nullity equality, gap-certified
  for (const CaseRecord& rec : builtin_cases()) {
    for (const CaseProblem& cp : rec.problems) {
      std::string msg;
      if (rec.backend == Backend::torus) {
        msg = oracle_disagreement_torus(
            cp.family, cp.alpha, torus_solve_detail(build_torus_problem(cp)));
      } else {
        const Problem pr = build_su2_problem(rec, cp);
        msg = oracle_disagreement_su2(cp.family, cp.fiber, pr.frame, pr.gamma,
                                      cp.alpha, solve(pr));
      }
      if (!msg.empty()) return fail(rec.id + ": " + msg);
    }
  }

  // cross-path transport comparison
  auto make_op = [](OpFamily fam, const Frame& f) {
    switch (fam) {
      case OpFamily::laplacian: return op_laplacian(f);
      case OpFamily::rot: return op_rot(f);
      case OpFamily::grad: return op_grad(f);
      case OpFamily::divergence: return op_div(f);
      case OpFamily::dirac_se: return op_dirac_se(f);
      default: return op_dirac_sine(f);
    }
  };
  for (const Frame& f : catalog_su2_frames()) {
    for (OpFamily fam : {OpFamily::laplacian, OpFamily::rot, OpFamily::grad,
                         OpFamily::divergence, OpFamily::dirac_se,
                         OpFamily::dirac_sine}) {
      const OperatorSpec op = make_op(fam, f);
      for (int n = 0; n <= 10; ++n) {
        const CMat diff = transport_exact_block(op, n) - float_block(fam, n, f);
        if (diff.cwiseAbs().maxCoeff() >= 1e-9)
          return fail("block transport drift on frame " + f.label);
      }
    }
  }
  for (int n = 0; n <= 10; ++n) {
    const CMat diff = transport_exact_block(op_dirac_a3(), n) -
                      float_block(OpFamily::dirac_a3, n, frame_a3());
    if (diff.cwiseAbs().maxCoeff() >= 1e-9)
      return fail("block transport drift on the squashed direct operator");
  }
  return ok("float nullities equal exact ones on every catalog problem; "
            "transport drift < 1e-9 for n <= 10");
}

inline CheckResult check_cutoff_stability() {
  for (const CaseRecord& rec : builtin_cases()) {
    if (rec.backend == Backend::torus) continue;
    for (const CaseProblem& cp : rec.problems) {
      Problem pr = build_su2_problem(rec, cp);
      const SolutionSpace base = solve(pr);
      if (!base.certified)
        return fail("catalog problem unexpectedly uncertified on " + rec.id);
      Problem wide = pr;
      wide.manual_cutoff = base.n_max + 4;
      const SolutionSpace ext = solve(wide);
      if (ext.complex_dim != base.complex_dim) {
        std::ostringstream os;
        os << rec.id << " " << op_family_name(cp.family)
           << ": dimension moved from " << base.complex_dim << " to "
           << ext.complex_dim << " past the certified cutoff";
        return fail(os.str());
      }
    }
  }
  for (long long lam : {4LL, 8LL}) {
    const auto base = lattice_enumerate(Rat(lam));
    const auto wide = lattice_enumerate(Rat(lam), 2);
    if (base != wide)
      return fail("doubled-radius lattice enumeration found new points at " +
                  std::to_string(lam));
  }
  return ok("cutoff + 4 reruns and doubled-radius enumeration change nothing");
}

inline Cyc random_cyc(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  Cyc c;
  for (int j = 0; j < 8; ++j)
    c = c + Cyc(Rat(num(rng), den(rng))) * Cyc::zeta_pow(j);
  return c;
}

inline CheckResult check_scalar_properties() {
  std::mt19937_64 rng(424242);
  for (int t = 0; t < 1000; ++t) {
    const Cyc a = random_cyc(rng), b = random_cyc(rng), c = random_cyc(rng);
    if (!((a + b) + c == a + (b + c))) return fail("addition associativity");
    if (!((a * b) * c == a * (b * c))) return fail("multiplication associativity");
    if (!(a * b == b * a)) return fail("commutativity");
    if (!(a * (b + c) == a * b + a * c)) return fail("distributivity");
    if (!((a * b).conj() == a.conj() * b.conj())) return fail("conj homomorphism");
    if (!(a.conj().conj() == a)) return fail("conj involution");
    if (!a.is_zero() && !(a * a.inv() == Cyc::one())) return fail("inverse");
  }
  for (int n = 0; n <= 12; ++n) {
    const Mat e1 = drho(n, LieElem::E1), e2 = drho(n, LieElem::E2),
              e3 = drho(n, LieElem::E3);
    if (!(e1 * e2 - e2 * e1 == Rat(2) * Cyc::one() * e3))
      return fail("ladder commutation at n = " + std::to_string(n));
  }
  return ok("1000 random field identity draws and the ladder commutation hold");
}

}  // namespace checks_detail

inline std::vector<NamedCheck> all_checks() {
  using namespace checks_detail;
  return {
      {"catalog-dimensions",
       "every documented eigenspace dimension is reproduced exactly",
       check_catalog_dimensions},
      {"rigidity-report",
       "verdicts and nontrivial remainders match the documented table",
       check_rigidity_report},
      {"subgroup-tables",
       "closure orders and equivariant dimension tables for n <= 12",
       check_subgroup_tables},
      {"operator-identities",
       "calculus, square and eigenspace-decomposition identities, exact",
       check_operator_identities},
      {"oracle-agreement",
       "float oracle nullities and block transport agree with the exact path",
       check_oracle_agreement},
      {"cutoff-stability",
       "certified cutoffs and lattice radii are saturated",
       check_cutoff_stability},
      {"scalar-properties",
       "random field identities and ladder commutation",
       check_scalar_properties},
  };
}

}  // namespace harmeig
