#pragma once

// The eight homogeneous cases as data records, their eigenproblem runs, and
// the rigidity report. Each record carries the exact frame constants, the
// deck group, the problem list with documented expected dimensions (left
// empty for values this artifact derives itself), and the dimension budget
// of deformations induced by the ambient symmetry group.

#include "harmeig/frames.hpp"
#include "harmeig/operators.hpp"
#include "harmeig/solver.hpp"
#include "harmeig/subgroup.hpp"
#include "harmeig/torus.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace harmeig {

enum class Backend { su2, torus };

enum class Framework { special_legendrian, sine_cone_lagrangian, direct_dirac };

inline std::string framework_name(Framework f) {
  switch (f) {
    case Framework::special_legendrian: return "special-Legendrian";
    case Framework::sine_cone_lagrangian: return "sine-cone-Lagrangian";
    case Framework::direct_dirac: return "direct-Dirac";
  }
  return "?";
}

struct CaseProblem {
  OpFamily family = OpFamily::laplacian;
  Rat alpha;
  std::string fiber = "trivial";  // trivial | adjoint | pair
  std::optional<long long> expected;
  // Sine-cone curl problems measure the Lagrangian deformation part; they
  // are excluded from the rigidity total, which counts non-Lagrangian
  // directions only.
  bool counts_toward_total = true;
};

struct CaseRecord {
  std::string id;
  Backend backend = Backend::su2;
  Framework framework = Framework::special_legendrian;
  std::optional<Frame> frame;  // su2 backend only
  std::string subgroup = "trivial";
  std::vector<CaseProblem> problems;
  long long trivial_dim = 0;
};

inline FiniteSubgroup subgroup_by_name(const std::string& s) {
  if (s == "trivial") return subgroup_trivial();
  if (s == "Z2") return subgroup_z2();
  if (s == "Z3") return subgroup_z3();
  if (s == "A4*") return subgroup_a4star();
  if (s == "D3*") return subgroup_d3star();
  throw std::domain_error("unknown subgroup: " + s);
}

inline std::vector<CaseRecord> builtin_cases() {
  std::vector<CaseRecord> cases;

  {
    CaseRecord a1;
    a1.id = "A1";
    a1.backend = Backend::torus;
    a1.framework = Framework::special_legendrian;
    a1.trivial_dim = 18;
    a1.problems.push_back({OpFamily::laplacian, Rat(8), "trivial", 12, true});
    a1.problems.push_back({OpFamily::rot, Rat(-2), "trivial", 6, true});
    cases.push_back(std::move(a1));
  }
  {
    CaseRecord a2;
    a2.id = "A2";
    a2.framework = Framework::special_legendrian;
    a2.frame = frame_a2();
    a2.subgroup = "Z3";
    a2.trivial_dim = 17;
    a2.problems.push_back({OpFamily::laplacian, Rat(8), "trivial", 19, true});
    a2.problems.push_back({OpFamily::rot, Rat(-2), "adjoint", 11, true});
    cases.push_back(std::move(a2));
  }
  {
    CaseRecord a3;
    a3.id = "A3";
    a3.framework = Framework::direct_dirac;
    a3.frame = frame_a3();
    a3.trivial_dim = 18;
    a3.problems.push_back({OpFamily::dirac_a3, Rat(-1), "trivial", 34, true});
    cases.push_back(std::move(a3));
  }

  const struct {
    const char* id;
    Frame frame;
    const char* subgroup;
    long long budget;
    long long lap_expected;
  } sine_cases[] = {
      {"S3", frame_round(), "trivial", 4, 4}, {"L1", frame_l1(), "trivial", 7, 7},
      {"L2", frame_l2(), "Z2", 6, 6},         {"L3", frame_l3(), "A4*", 7, 7},
      {"L4", frame_l4(), "D3*", 7, 7},
  };
  for (const auto& sc : sine_cases) {
    CaseRecord rec;
    rec.id = sc.id;
    rec.framework = Framework::sine_cone_lagrangian;
    rec.frame = sc.frame;
    rec.subgroup = sc.subgroup;
    rec.trivial_dim = sc.budget;
    rec.problems.push_back(
        {OpFamily::laplacian, Rat(3), "trivial", sc.lap_expected, true});
    // Lagrangian part; no documented value, computed and reported as derived.
    rec.problems.push_back(
        {OpFamily::rot, Rat(3), "adjoint", std::nullopt, false});
    cases.push_back(std::move(rec));
  }
  return cases;
}

inline std::optional<CaseRecord> find_case(const std::string& id) {
  for (auto& rec : builtin_cases())
    if (rec.id == id) return rec;
  return std::nullopt;
}

inline OperatorSpec su2_operator(OpFamily family, const Frame& frame) {
  switch (family) {
    case OpFamily::laplacian: return op_laplacian(frame);
    case OpFamily::rot: return op_rot(frame);
    case OpFamily::grad: return op_grad(frame);
    case OpFamily::divergence: return op_div(frame);
    case OpFamily::dirac_se: return op_dirac_se(frame);
    case OpFamily::dirac_sine: return op_dirac_sine(frame);
    case OpFamily::dirac_a3:
      if (frame != frame_a3())
        throw std::domain_error("dirac_A3 is tied to the squashed 1/7 frame");
      return op_dirac_a3();
    case OpFamily::custom: break;
  }
  throw std::domain_error("no operator factory for this family");
}

inline FiberRep fiber_by_name(const std::string& kind, const Frame& frame,
                              const FiniteSubgroup& gamma, int d) {
  if (kind == "trivial") return fiber_trivial(d);
  if (kind == "adjoint") return fiber_adjoint_in_frame(frame, gamma);
  if (kind == "pair") return fiber_normal_in_frame(frame, gamma);
  throw std::domain_error("unknown fiber kind: " + kind);
}

inline Problem build_su2_problem(const CaseRecord& rec, const CaseProblem& cp) {
  if (rec.backend != Backend::su2 || !rec.frame.has_value())
    throw std::domain_error("case is not an SU(2) quotient");
  const Frame& frame = *rec.frame;
  OperatorSpec op = su2_operator(cp.family, frame);
  const FiniteSubgroup gamma = subgroup_by_name(rec.subgroup);
  FiberRep tau = fiber_by_name(cp.fiber, frame, gamma, op.d_in);
  return Problem(frame, std::move(op), cp.alpha, gamma, std::move(tau));
}

inline TorusProblem build_torus_problem(const CaseProblem& cp) {
  switch (cp.family) {
    case OpFamily::laplacian: return TorusProblem{torus_op_laplacian(), cp.alpha};
    case OpFamily::rot: return TorusProblem{torus_op_rot(), cp.alpha};
    default: break;
  }
  throw std::domain_error("torus cases solve laplacian or rot problems only");
}

struct ProblemResult {
  CaseProblem problem;
  SolutionSpace space;
  bool matched = true;  // vacuously true when no expected value is recorded
};

struct CaseResult {
  std::string id;
  Framework framework = Framework::special_legendrian;
  long long trivial_dim = 0;
  std::vector<ProblemResult> problems;
  bool all_matched = true;
  long long total = 0;       // real dimension entering the rigidity verdict
  long long lagrangian = 0;  // sine-cone curl part, 0 elsewhere
};

inline CaseResult run_case(const CaseRecord& rec, bool parallel = false) {
  CaseResult result;
  result.id = rec.id;
  result.framework = rec.framework;
  result.trivial_dim = rec.trivial_dim;
  for (const CaseProblem& cp : rec.problems) {
    ProblemResult pr;
    pr.problem = cp;
    pr.space = rec.backend == Backend::torus
                   ? torus_solve(build_torus_problem(cp))
                   : solve(build_su2_problem(rec, cp), parallel);
    const long long dim = pr.space.real_dim.value_or(pr.space.complex_dim);
    if (cp.expected.has_value()) pr.matched = (dim == *cp.expected);
    result.all_matched = result.all_matched && pr.matched;
    if (cp.counts_toward_total)
      result.total += dim;
    else
      result.lagrangian += dim;
    result.problems.push_back(std::move(pr));
  }
  return result;
}

inline CaseResult run_case(const std::string& id, bool parallel = false) {
  const auto rec = find_case(id);
  if (!rec.has_value()) throw std::domain_error("unknown case: " + id);
  return run_case(*rec, parallel);
}

struct ReportRow {
  std::string id;
  std::string framework;
  long long total = 0;
  long long trivial_dim = 0;
  long long nontrivial = 0;
  std::string verdict;
  std::string annotation;
};

inline ReportRow report_row(const CaseResult& cr) {
  ReportRow row;
  row.id = cr.id;
  row.framework = framework_name(cr.framework);
  row.total = cr.total;
  row.trivial_dim = cr.trivial_dim;
  row.nontrivial = cr.total - cr.trivial_dim;
  if (row.nontrivial < 0)
    throw std::domain_error("report: computed total below the symmetry budget");

  const bool sine = cr.framework == Framework::sine_cone_lagrangian;
  if (sine)
    row.verdict = row.nontrivial == 0 ? "non-Lagrangian deformations trivial"
                                      : "non-Lagrangian deformations nontrivial";
  else
    row.verdict = row.nontrivial == 0 ? "rigid" : "not rigid";

  if (cr.id == "A2" && row.nontrivial == 13)
    row.annotation =
        "nontrivial directions realized by the PGL(4,C) action on CP^3 via "
        "Hopf lifts: 30 - 6 - 15 + 4 = 13; the deformation space is "
        "unobstructed";
  else if (cr.id == "A3" && row.nontrivial > 0)
    row.annotation = "16 directions beyond the symmetry budget; no "
                     "obstruction analysis is attempted here";
  else if (sine)
    row.annotation = "Lagrangian part (curl eigenvalue 3): " +
                     std::to_string(cr.lagrangian) +
                     ", derived here and excluded from the verdict";
  return row;
}

inline std::vector<ReportRow> rigidity_report(bool parallel = false) {
  std::vector<ReportRow> rows;
  for (const CaseRecord& rec : builtin_cases())
    rows.push_back(report_row(run_case(rec, parallel)));
  return rows;
}

}  // namespace harmeig
