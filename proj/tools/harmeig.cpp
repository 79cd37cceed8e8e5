// Command-line front end: list the built-in cases, solve documented or ad-hoc
// eigenproblems, print the rigidity report, and run the self-check suite.
//
// Exit codes: 0 success, 1 usage error, 2 expected-dimension or oracle
// mismatch, 3 uncertified result without --allow-uncertified.

#include "CLI11.hpp"
#include "json.hpp"

#include "harmeig/catalog.hpp"
#include "harmeig/checks.hpp"
#include "harmeig/solver.hpp"
#include "harmeig/torus.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace harmeig;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitUncertified = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exact rational "a/b" (or plain integer "a"); the error names the flag so
// the message points at the offending token
Rat parse_rational(const std::string& tok, const std::string& flag) {
  const std::optional<Rat> r = rat_parse(tok);
  if (!r) throw UsageError("malformed rational '" + tok + "' for " + flag);
  return *r;
}

std::string rat_display(const Rat& r) {
  return rat_is_integer(r) ? rat_num(r).str() : rat_to_string(r);
}

std::optional<OpFamily> family_by_name(const std::string& s) {
  for (OpFamily f : {OpFamily::laplacian, OpFamily::rot, OpFamily::grad,
                     OpFamily::divergence, OpFamily::dirac_se,
                     OpFamily::dirac_sine, OpFamily::dirac_a3})
    if (s == op_family_name(f)) return f;
  return std::nullopt;
}

std::string backend_name(Backend b) {
  return b == Backend::torus ? "torus" : "su2";
}

Framework framework_by_name(const std::string& s) {
  for (Framework f : {Framework::special_legendrian,
                      Framework::sine_cone_lagrangian, Framework::direct_dirac})
    if (s == framework_name(f)) return f;
  throw UsageError("unknown framework '" + s + "' in cases file");
}

// ---------------------------------------------------------------------------
// case table serialization (the `list --format json` output doubles as the
// --cases-file input schema)

json case_to_json(const CaseRecord& rec) {
  json j;
  j["id"] = rec.id;
  j["backend"] = backend_name(rec.backend);
  j["framework"] = framework_name(rec.framework);
  if (rec.frame) {
    j["frame"] = {{"p_sq", rat_to_string(rec.frame->p_sq)},
                  {"q", rat_to_string(rec.frame->q)},
                  {"label", rec.frame->label}};
  } else {
    j["frame"] = nullptr;
  }
  j["subgroup"] = rec.subgroup;
  j["trivial_dim"] = rec.trivial_dim;
  json problems = json::array();
  for (const CaseProblem& cp : rec.problems) {
    json p;
    p["op"] = op_family_name(cp.family);
    p["alpha"] = rat_to_string(cp.alpha);
    p["fiber"] = cp.fiber;
    p["expected"] = cp.expected ? json(*cp.expected) : json(nullptr);
    p["counts_toward_total"] = cp.counts_toward_total;
    problems.push_back(std::move(p));
  }
  j["problems"] = std::move(problems);
  return j;
}

CaseRecord case_from_json(const json& j) {
  CaseRecord rec;
  try {
    rec.id = j.at("id").get<std::string>();
    const std::string backend = j.at("backend").get<std::string>();
    if (backend == "torus")
      rec.backend = Backend::torus;
    else if (backend == "su2")
      rec.backend = Backend::su2;
    else
      throw UsageError("unknown backend '" + backend + "' in cases file");
    rec.framework = framework_by_name(j.at("framework").get<std::string>());
    if (!j.at("frame").is_null()) {
      const json& f = j.at("frame");
      rec.frame = Frame(parse_rational(f.at("p_sq").get<std::string>(), "frame.p_sq"),
                        parse_rational(f.at("q").get<std::string>(), "frame.q"),
                        f.value("label", std::string()));
    }
    rec.subgroup = j.at("subgroup").get<std::string>();
    subgroup_by_name(rec.subgroup);  // validate the token early
    rec.trivial_dim = j.at("trivial_dim").get<long long>();
    for (const json& p : j.at("problems")) {
      CaseProblem cp;
      const std::string op = p.at("op").get<std::string>();
      const auto fam = family_by_name(op);
      if (!fam) throw UsageError("unknown operator '" + op + "' in cases file");
      cp.family = *fam;
      cp.alpha = parse_rational(p.at("alpha").get<std::string>(), "problem.alpha");
      cp.fiber = p.at("fiber").get<std::string>();
      cp.expected = p.at("expected").is_null()
                        ? std::nullopt
                        : std::optional<long long>(p.at("expected").get<long long>());
      cp.counts_toward_total = p.at("counts_toward_total").get<bool>();
      rec.problems.push_back(std::move(cp));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad cases file: ") + e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("bad cases file: ") + e.what());
  }
  return rec;
}

std::vector<CaseRecord> load_cases(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open cases file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("cases file '" + path + "' is not valid JSON: " + e.what());
  }
  std::vector<CaseRecord> cases;
  try {
    for (const json& c : j.at("cases")) cases.push_back(case_from_json(c));
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad cases file: ") + e.what());
  }
  if (cases.empty()) throw UsageError("cases file holds no cases");
  return cases;
}

// ---------------------------------------------------------------------------
// result rendering

struct SolveOutput {
  std::optional<std::string> case_id;
  OpFamily family = OpFamily::laplacian;
  Rat alpha;
  bool torus = false;
  SolutionSpace space;
  std::optional<long long> expected;
  std::optional<bool> match;
  std::optional<std::string> oracle;  // "agree" or the divergence message
};

json result_json(const SolveOutput& r) {
  json j;
  j["case"] = r.case_id ? json(*r.case_id) : json(nullptr);
  j["problem"] = op_family_name(r.family);
  j["alpha"] = rat_display(r.alpha);
  j["cutoff"] = {{"n_max", r.space.n_max}, {"certified", r.space.certified}};
  json blocks = json::array();
  for (const BlockSolution& b : r.space.blocks) {
    if (b.nullity == 0) continue;
    blocks.push_back({{"n", b.n},
                      {"nullity", b.nullity},
                      {"multiplicity", r.torus ? 1 : b.n + 1}});
  }
  j["blocks"] = std::move(blocks);
  j["complex_dim"] = r.space.complex_dim;
  j["real_dim"] = r.space.real_dim ? json(*r.space.real_dim) : json(nullptr);
  j["expected"] = r.expected ? json(*r.expected) : json(nullptr);
  j["match"] = r.match ? json(*r.match) : json(nullptr);
  if (r.oracle) j["oracle"] = *r.oracle;
  return j;
}

std::string result_text(const SolveOutput& r) {
  std::ostringstream os;
  os << "case " << (r.case_id ? *r.case_id : std::string("-")) << "  problem "
     << op_family_name(r.family) << "  alpha " << rat_display(r.alpha) << "\n";
  os << "  cutoff n_max " << r.space.n_max
     << (r.space.certified ? " (certified)" : " (manual, uncertified)") << "\n";
  os << "  blocks:";
  bool any = false;
  for (const BlockSolution& b : r.space.blocks) {
    if (b.nullity == 0) continue;
    os << (any ? ";" : "") << " n=" << b.n << " nullity " << b.nullity << " x"
       << (r.torus ? 1 : b.n + 1);
    any = true;
  }
  if (!any) os << " none";
  os << "\n";
  os << "  complex_dim " << r.space.complex_dim << "  real_dim ";
  if (r.space.real_dim)
    os << *r.space.real_dim;
  else
    os << "-";
  if (r.expected) os << "  expected " << *r.expected;
  if (r.match) os << "  match " << (*r.match ? "yes" : "no");
  if (r.oracle) os << "  oracle " << *r.oracle;
  os << "\n";
  return os.str();
}

std::string result_csv_header() {
  return "case,problem,alpha,n_max,certified,complex_dim,real_dim,expected,match";
}

std::string result_csv_row(const SolveOutput& r) {
  std::ostringstream os;
  os << (r.case_id ? *r.case_id : std::string("-")) << ","
     << op_family_name(r.family) << "," << rat_display(r.alpha) << ","
     << r.space.n_max << "," << (r.space.certified ? "true" : "false") << ","
     << r.space.complex_dim << ",";
  if (r.space.real_dim) os << *r.space.real_dim;
  os << ",";
  if (r.expected) os << *r.expected;
  os << ",";
  if (r.match) os << (*r.match ? "true" : "false");
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

// ---------------------------------------------------------------------------
// subcommand implementations

struct CommonFlags {
  std::string format = "text";
  std::string cases_file;
  int parallel = 1;
  bool oracle = false;
  bool allow_uncertified = false;
  bool quiet = false;
};

std::vector<CaseRecord> resolve_cases(const CommonFlags& flags) {
  if (flags.cases_file.empty()) return builtin_cases();
  return load_cases(flags.cases_file);
}

SolveOutput solve_one(const CaseRecord& rec, const CaseProblem& cp,
                      const CommonFlags& flags,
                      std::optional<long long> expect_override) {
  SolveOutput out;
  out.case_id = rec.id;
  out.family = cp.family;
  out.alpha = cp.alpha;
  out.expected = expect_override ? expect_override : cp.expected;
  if (rec.backend == Backend::torus) {
    out.torus = true;
    const TorusSolution ts = torus_solve_detail(build_torus_problem(cp));
    out.space = ts.space;
    if (flags.oracle) {
      const std::string msg = oracle_disagreement_torus(cp.family, cp.alpha, ts);
      out.oracle = msg.empty() ? "agree" : msg;
    }
  } else {
    const Problem pr = build_su2_problem(rec, cp);
    out.space = solve(pr, flags.parallel > 1);
    if (flags.oracle) {
      const std::string msg = oracle_disagreement_su2(
          cp.family, cp.fiber, pr.frame, pr.gamma, cp.alpha, out.space);
      out.oracle = msg.empty() ? "agree" : msg;
    }
  }
  if (out.expected)
    out.match = out.space.real_dim && *out.space.real_dim == *out.expected;
  return out;
}

int emit_results(const std::vector<SolveOutput>& results, const CommonFlags& flags,
                 bool single) {
  if (flags.format == "json") {
    if (single) {
      std::cout << result_json(results.front()).dump(2) << "\n";
    } else {
      json arr = json::array();
      for (const SolveOutput& r : results) arr.push_back(result_json(r));
      std::cout << arr.dump(2) << "\n";
    }
  } else if (flags.format == "csv") {
    std::cout << result_csv_header() << "\n";
    for (const SolveOutput& r : results) std::cout << result_csv_row(r) << "\n";
  } else {
    for (const SolveOutput& r : results) std::cout << result_text(r);
  }
  int code = kExitOk;
  for (const SolveOutput& r : results) {
    if (r.match && !*r.match) code = kExitMismatch;
    if (r.oracle && *r.oracle != "agree") code = kExitMismatch;
  }
  return code;
}

int cmd_list(const CommonFlags& flags) {
  const std::vector<CaseRecord> cases = resolve_cases(flags);
  if (flags.format == "json") {
    json j;
    json arr = json::array();
    for (const CaseRecord& rec : cases) arr.push_back(case_to_json(rec));
    j["cases"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
  } else if (flags.format == "csv") {
    std::cout << "case,backend,framework,subgroup,problems,trivial_dim\n";
    for (const CaseRecord& rec : cases)
      std::cout << rec.id << "," << backend_name(rec.backend) << ","
                << framework_name(rec.framework) << "," << rec.subgroup << ","
                << rec.problems.size() << "," << rec.trivial_dim << "\n";
  } else {
    for (const CaseRecord& rec : cases) {
      std::cout << rec.id << "  " << backend_name(rec.backend) << "  "
                << framework_name(rec.framework) << "  subgroup " << rec.subgroup
                << "  trivial_dim " << rec.trivial_dim << "\n";
      for (const CaseProblem& cp : rec.problems) {
        std::cout << "    " << op_family_name(cp.family) << " at "
                  << rat_display(cp.alpha) << ", fiber " << cp.fiber;
        if (cp.expected) std::cout << ", documented " << *cp.expected;
        if (!cp.counts_toward_total) std::cout << " (outside the verdict total)";
        std::cout << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_solve(const std::string& case_id, const std::string& problem,
              std::optional<long long> expect_override, const CommonFlags& flags) {
  const std::vector<CaseRecord> cases = resolve_cases(flags);
  const CaseRecord* rec = nullptr;
  for (const CaseRecord& c : cases)
    if (c.id == case_id) rec = &c;
  if (!rec) throw UsageError("unknown case '" + case_id + "'");

  std::vector<const CaseProblem*> selected;
  if (problem.empty()) {
    for (const CaseProblem& cp : rec->problems) selected.push_back(&cp);
  } else {
    const auto fam = family_by_name(problem);
    if (!fam) throw UsageError("unknown operator '" + problem + "'");
    for (const CaseProblem& cp : rec->problems)
      if (cp.family == *fam) selected.push_back(&cp);
    if (selected.empty())
      throw UsageError("case " + case_id + " has no documented problem '" +
                       problem + "'");
  }
  if (expect_override && problem.empty())
    throw UsageError("--expect-override needs --problem to pick one problem");

  std::vector<SolveOutput> results;
  for (const CaseProblem* cp : selected)
    results.push_back(solve_one(*rec, *cp, flags, expect_override));
  for (const SolveOutput& r : results)
    if (!r.space.certified && !flags.allow_uncertified) {
      std::cerr << "error: uncertified cutoff; rerun with --allow-uncertified "
                   "to accept the result\n";
      return kExitUncertified;
    }
  return emit_results(results, flags, !problem.empty());
}

int cmd_eigen(const std::string& p2_tok, const std::string& q_tok,
              const std::string& op_name, const std::string& value_tok,
              const std::string& subgroup, std::string fiber,
              std::optional<int> nmax, const CommonFlags& flags) {
  const Rat p2 = parse_rational(p2_tok, "--p2");
  const Rat q = parse_rational(q_tok, "--q");
  const Rat value = parse_rational(value_tok, "--value");
  if (p2 <= 0) throw UsageError("--p2 must be positive");
  if (q <= 0) throw UsageError("--q must be positive");
  const auto fam = family_by_name(op_name);
  if (!fam) throw UsageError("unknown operator '" + op_name + "'");

  if (fiber.empty()) {
    switch (*fam) {
      case OpFamily::laplacian: fiber = "trivial"; break;
      case OpFamily::rot: fiber = "adjoint"; break;
      case OpFamily::dirac_se:
      case OpFamily::dirac_sine: fiber = "pair"; break;
      default: fiber = "trivial"; break;
    }
  }

  const Frame frame(p2, q, "custom");
  SolveOutput out;
  out.family = *fam;
  out.alpha = value;
  try {
    OperatorSpec op = su2_operator(*fam, frame);
    const FiniteSubgroup gamma = subgroup_by_name(subgroup);
    FiberRep tau = fiber_by_name(fiber, frame, gamma, op.d_in);
    Problem pr(frame, std::move(op), value, gamma, std::move(tau));
    if (nmax) pr.manual_cutoff = *nmax;
    out.space = solve(pr, flags.parallel > 1);
    if (flags.oracle) {
      const std::string msg = oracle_disagreement_su2(*fam, fiber, pr.frame,
                                                      pr.gamma, value, out.space);
      out.oracle = msg.empty() ? "agree" : msg;
    }
  } catch (const UncertifiedError& e) {
    std::cerr << "error: " << e.what()
              << "; pass --nmax N to set a manual cutoff\n";
    return kExitUncertified;
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  if (!out.space.certified && !flags.allow_uncertified) {
    std::cerr << "error: manual cutoff makes the result uncertified; rerun "
                 "with --allow-uncertified to accept it\n";
    return kExitUncertified;
  }
  return emit_results({out}, flags, true);
}

int cmd_report(const CommonFlags& flags) {
  const std::vector<ReportRow> rows = rigidity_report(flags.parallel > 1);
  if (flags.format == "json") {
    json arr = json::array();
    for (const ReportRow& r : rows) {
      json j;
      j["case"] = r.id;
      j["framework"] = r.framework;
      j["total"] = r.total;
      j["trivial"] = r.trivial_dim;
      j["nontrivial"] = r.nontrivial;
      j["verdict"] = r.verdict;
      j["annotation"] = r.annotation;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
  } else if (flags.format == "csv") {
    std::cout << "case,framework,total,trivial,nontrivial,verdict,annotation\n";
    for (const ReportRow& r : rows)
      std::cout << r.id << "," << r.framework << "," << r.total << ","
                << r.trivial_dim << "," << r.nontrivial << "," << r.verdict
                << "," << csv_quote(r.annotation) << "\n";
  } else {
    for (const ReportRow& r : rows) {
      std::cout << r.id << "  " << r.framework << "  total " << r.total
                << "  trivial " << r.trivial_dim << "  nontrivial "
                << r.nontrivial << "  -> " << r.verdict << "\n";
      if (!r.annotation.empty()) std::cout << "    " << r.annotation << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const CommonFlags& flags) {
  bool all_pass = true;
  for (const NamedCheck& c : all_checks()) {
    const CheckResult r = c.run();
    all_pass = all_pass && r.pass;
    if (!flags.quiet || !r.pass)
      std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] " << c.name << ": "
                << r.detail << "\n";
  }
  return all_pass ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact eigenspace dimensions of invariant operators on "
               "group quotients and the flat torus"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string case_id, problem, p2_tok, q_tok, op_name, value_tok;
  std::string subgroup = "trivial", fiber;
  long long expect_override_val = 0;
  int nmax_val = 0;

  auto add_common = [&](CLI::App* sub, bool with_cases_file) {
    sub->add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--parallel", flags.parallel, "solve blocks in parallel")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", flags.quiet, "suppress non-essential output");
    if (with_cases_file)
      sub->add_option("--cases-file", flags.cases_file,
                      "JSON case table replacing the built-in catalog");
  };

  CLI::App* lst = app.add_subcommand("list", "show the case catalog");
  add_common(lst, true);

  CLI::App* slv = app.add_subcommand("solve", "solve documented case problems");
  slv->add_option("--case", case_id, "case id")->required();
  slv->add_option("--problem", problem, "operator name to select one problem");
  slv->add_option("--expect-override", expect_override_val,
                  "replace the documented expected dimension");
  slv->add_flag("--oracle", flags.oracle, "cross-check with the float oracle");
  slv->add_flag("--allow-uncertified", flags.allow_uncertified,
                "accept uncertified cutoffs");
  add_common(slv, true);

  CLI::App* eig = app.add_subcommand("eigen", "solve an ad-hoc eigenproblem");
  eig->add_option("--p2", p2_tok, "squared frame scale p^2, exact a/b")->required();
  eig->add_option("--q", q_tok, "frame scale q, exact a/b")->required();
  eig->add_option("--op", op_name, "operator name")->required();
  eig->add_option("--value", value_tok, "eigenvalue, exact a/b")->required();
  eig->add_option("--subgroup", subgroup, "finite subgroup name");
  eig->add_option("--fiber", fiber, "fiber kind: trivial | adjoint | pair");
  eig->add_option("--nmax", nmax_val,
                  "manual cutoff (makes the result uncertified)")
      ->check(CLI::NonNegativeNumber);
  eig->add_flag("--oracle", flags.oracle, "cross-check with the float oracle");
  eig->add_flag("--allow-uncertified", flags.allow_uncertified,
                "accept uncertified cutoffs");
  add_common(eig, false);

  CLI::App* rep = app.add_subcommand("report", "print the rigidity report");
  add_common(rep, false);

  CLI::App* ver = app.add_subcommand("verify", "run the self-check suite");
  add_common(ver, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::optional<long long> expect_override;
  if (slv->count("--expect-override") > 0) expect_override = expect_override_val;
  std::optional<int> nmax;
  if (eig->count("--nmax") > 0) nmax = nmax_val;

  try {
    if (lst->parsed()) return cmd_list(flags);
    if (slv->parsed()) return cmd_solve(case_id, problem, expect_override, flags);
    if (eig->parsed())
      return cmd_eigen(p2_tok, q_tok, op_name, value_tok, subgroup, fiber, nmax,
                       flags);
    if (rep->parsed()) return cmd_report(flags);
    if (ver->parsed()) return cmd_verify(flags);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UncertifiedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUncertified;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
