// qoper command-line driver: JSON problems in, JSON reports out.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qoper/bethe.hpp"
#include "qoper/json_io.hpp"
#include "qoper/literature.hpp"
#include "qoper/qq.hpp"
#include "qoper/suites.hpp"
#include "qoper/twist.hpp"
#include "qoper/xxx_eps.hpp"

using namespace qoper;

namespace {

struct Flags {
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> samples;
  std::optional<int> starts;
  std::optional<int> lattice_depth;
  bool exclude_self_term = false;
};

// report envelope shared by all commands
struct Output {
  Report report;
  json solutions = json::array();
  json conventions = json::object();
  json extra = json::object();
};

// numerical settings: JSON fields first, flags win
struct Settings {
  SolveOptions solve;
  int samples = 50;
  bool exclude_self_term = false;
};

Settings settings_from(const json& j, const Flags& f) {
  Settings s;
  if (j.is_object()) {
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw InputError("/seed", "expected an unsigned integer");
      s.solve.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tol")) {
      if (!j["tol"].is_number()) throw InputError("/tol", "expected a number");
      s.solve.tol = j["tol"].get<double>();
    }
    if (j.contains("samples")) {
      if (!j["samples"].is_number_integer()) throw InputError("/samples", "expected an integer");
      s.samples = j["samples"].get<int>();
    }
    if (j.contains("starts")) {
      if (!j["starts"].is_number_integer()) throw InputError("/starts", "expected an integer");
      s.solve.starts = j["starts"].get<int>();
    }
    if (j.contains("lattice_depth")) {
      if (!j["lattice_depth"].is_number_integer()) throw InputError("/lattice_depth", "expected an integer");
      s.solve.lattice_depth = j["lattice_depth"].get<int>();
    }
    if (j.contains("gate_certificate")) {
      if (!j["gate_certificate"].is_boolean()) throw InputError("/gate_certificate", "expected a boolean");
      s.solve.gate_certificate = j["gate_certificate"].get<bool>();
    }
    if (j.contains("exclude_self_term")) {
      if (!j["exclude_self_term"].is_boolean()) throw InputError("/exclude_self_term", "expected a boolean");
      s.exclude_self_term = j["exclude_self_term"].get<bool>();
    }
  }
  if (f.seed) s.solve.seed = *f.seed;
  if (f.tol) s.solve.tol = *f.tol;
  if (f.samples) s.samples = *f.samples;
  if (f.starts) s.solve.starts = *f.starts;
  if (f.lattice_depth) s.solve.lattice_depth = *f.lattice_depth;
  if (f.exclude_self_term) s.exclude_self_term = true;
  if (!(s.solve.tol > 0.0)) throw InputError("/tol", "tolerance must be positive");
  if (s.samples < 1) throw InputError("/samples", "must be positive");
  if (s.solve.starts < 1) throw InputError("/starts", "must be positive");
  if (s.solve.lattice_depth < 0) throw InputError("/lattice_depth", "must be nonnegative");
  return s;
}

void merge_prefixed(Report& into, const Report& from, const std::string& prefix) {
  for (auto c : from.checks) {
    c.name = prefix + c.name;
    into.checks.push_back(std::move(c));
  }
  for (const auto& n : from.notes) into.notes.push_back(prefix + n);
}

json conventions(const Settings& s) {
  return json{{"self_term", s.exclude_self_term ? "excluded" : "included"}};
}

json solution_json(const BetheSolution& sol, const Report& verify) {
  json j = to_json(sol);
  j["verification"] = to_json(verify);
  return j;
}

// ---- solve ----

Output run_solve(const json& in, const Settings& st) {
  ProblemInput prob = problem_from_json(in);
  Output out;
  out.conventions = conventions(st);
  out.extra["problem"] = to_json(prob);
  SolveOutcome res;
  if (prob.type == "gl2") {
    const auto& p = prob.gl2;
    res = solve_gl2(p, st.solve);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      const auto& sol = res.solutions[i];
      Report v = verify_solution(p, sol, st.solve);
      json sj = solution_json(sol, v);
      // explicit product form, with the chosen self-term convention
      try {
        double m = 0.0;
        for (Complex c : residual_gl2_full(sol.roots[0], p, st.exclude_self_term)) m = std::max(m, std::abs(c));
        sj["explicit_form_residual"] = m;
      } catch (const std::runtime_error& e) {
        sj["explicit_form_residual"] = e.what();
      }
      out.solutions.push_back(sj);
      merge_prefixed(out.report, v, "solution " + std::to_string(i) + ": ");
    }
    if (p.magnons == 1) out.report.merge(oracle_comparison_gl2(p, res, st.solve.lattice_depth, 1e-9));
  } else if (prob.type == "gln") {
    const auto& p = prob.gln.problem;
    res = solve_glN(p, st.solve);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      Report v = verify_solution(p, res.solutions[i], st.solve);
      out.solutions.push_back(solution_json(res.solutions[i], v));
      merge_prefixed(out.report, v, "solution " + std::to_string(i) + ": ");
    }
    if (prob.gln.devega) out.conventions["q_power"] = prob.gln.devega->ratio_q_power;
  } else {
    const EpsForm form = in.value("form", std::string("explicit")) == "abstract" ? EpsForm::Abstract : EpsForm::Explicit;
    const auto& p = prob.xxx;
    res = solve_eps(p, st.solve, form);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      Report v = verify_solution(p, res.solutions[i], st.solve, form);
      out.solutions.push_back(solution_json(res.solutions[i], v));
      merge_prefixed(out.report, v, "solution " + std::to_string(i) + ": ");
    }
    if (p.magnons == 1) out.report.merge(oracle_comparison_eps(p, res, st.solve.lattice_depth, 1e-10, form));
    out.conventions["form"] = form == EpsForm::Abstract ? "abstract" : "explicit";
  }
  out.report.add_flag("at least one solution found", "bethe-equations", !res.solutions.empty());
  json stats = to_json(res);
  stats.erase("solutions");
  out.extra["solver"] = stats;
  return out;
}

// ---- verify ----

Output run_verify(const json& in, const Settings& st) {
  const json& pj = in.contains("problem") ? in["problem"] : in;
  const std::string pf = in.contains("problem") ? "/problem" : "";
  ProblemInput prob = problem_from_json(pj, pf);
  if (!in.contains("solutions")) throw InputError("/solutions", "missing required field");
  const json& sols = in["solutions"];
  if (!sols.is_array()) throw InputError("/solutions", "expected an array");
  Output out;
  out.conventions = conventions(st);
  out.extra["problem"] = to_json(prob);
  const EpsForm form = (in.contains("conventions") && in["conventions"].value("form", "") == "abstract") ||
                               pj.value("form", std::string("explicit")) == "abstract"
                           ? EpsForm::Abstract
                           : EpsForm::Explicit;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const std::string f = "/solutions/" + std::to_string(i);
    BetheSolution sol;
    const json& rj = sols[i].is_object() ? sols[i].value("roots", json()) : sols[i];
    sol.roots = level_roots_from_json(rj, f + (sols[i].is_object() ? "/roots" : ""));
    Report v = prob.type == "gl2"   ? verify_solution(prob.gl2, sol, st.solve)
               : prob.type == "gln" ? verify_solution(prob.gln.problem, sol, st.solve)
                                    : verify_solution(prob.xxx, sol, st.solve, form);
    out.solutions.push_back(json{{"roots", to_json(sol.roots)}, {"verification", to_json(v)}});
    merge_prefixed(out.report, v, "solution " + std::to_string(i) + ": ");
  }
  if (sols.empty()) out.report.add_flag("at least one solution to verify", "bethe-equations", false);
  return out;
}

// ---- qq-check ----

Output run_qq_check(const json& in, const Settings& st) {
  if (!in.is_object() || !in.contains("type")) throw InputError("/type", "missing required field");
  const std::string type = in["type"].is_string() ? in["type"].get<std::string>() : "";
  Output out;
  if (type == "gl2") {
    out.report = qq_check_gl2(qq_gl2_from_json(in), st.samples, st.solve.tol, st.solve.seed);
  } else if (type == "gln") {
    out.report = qq_check_glN(qq_gln_from_json(in), st.samples, st.solve.tol, st.solve.seed);
  } else {
    throw InputError("/type", "expected \"gl2\" or \"gln\"");
  }
  return out;
}

// ---- identity-suite ----

Output run_identity_suite(const Flags& f, const Settings& st) {
  SuiteOptions o;
  o.seed = st.solve.seed;
  o.tol = f.tol;
  o.samples = f.samples;
  Output out;
  out.report = identity_suite(o);
  return out;
}

// ---- literature-check ----

Output run_literature(const json& in, const Settings& st) {
  if (!in.is_object() || !in.contains("target") || !in["target"].is_string())
    throw InputError("/target", "expected one of vw, ynz, devega_example, devega, frassek");
  const std::string target = in["target"].get<std::string>();
  const double tol = in.contains("tol") || st.solve.tol != SolveOptions{}.tol ? st.solve.tol : 1e-9;
  Output out;
  out.conventions = conventions(st);
  out.conventions["target"] = target;
  if (target == "vw") {
    BetheProblemGL2 p = gl2_problem_from_json(in.value("problem", json()), "/problem");
    SolveOutcome res = solve_gl2(p, st.solve);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      Report t = vw_transport_check(p, res.solutions[i].roots[0], tol);
      out.solutions.push_back(json{{"roots", to_json(res.solutions[i].roots)}, {"transport", to_json(t)}});
      merge_prefixed(out.report, t, "solution " + std::to_string(i) + ": ");
    }
    out.report.add_flag("at least one solution transported", "vw-bethe", !res.solutions.empty());
  } else if (target == "ynz") {
    SubstitutionYNZ y = ynz_from_json(in.value("substitution", json()), "/substitution");
    if (!in["substitution"].contains("v")) {
      if (!in.contains("magnons") || !in["magnons"].is_number_integer())
        throw InputError("/magnons", "needed when the substitution has no roots v");
      y.v.assign(in["magnons"].get<int>(), 0.0);
    }
    SolveOutcome res = solve_gl2(ynz_problem(y), st.solve);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      Report t = ynz_transport_check(y, res.solutions[i].roots[0], tol);
      out.solutions.push_back(json{{"roots", to_json(res.solutions[i].roots)},
                                   {"v", to_json(ynz_inverse_roots(res.solutions[i].roots[0], y.eta))},
                                   {"transport", to_json(t)}});
      merge_prefixed(out.report, t, "solution " + std::to_string(i) + ": ");
    }
    out.report.add_flag("at least one solution transported", "ynz-bethe", !res.solutions.empty());
  } else if (target == "devega_example") {
    const Complex q = complex_from_json(in.value("q", json()), "/q");
    DeVegaParams d = devega_params_from_json(in.value("devega", json()), "/devega", 2);
    out.report = devega_example_check(d, q, st.samples, in.contains("tol") ? st.solve.tol : 1e-10, st.solve.seed);
    out.conventions["q_power"] = d.ratio_q_power;
  } else if (target == "devega") {
    GLNProblemInput g = gln_problem_from_json(in.value("problem", json()), "/problem");
    if (!g.devega) throw InputError("/problem/twist/kind", "devega target needs a devega twist");
    SolveOptions so = st.solve;
    so.gate_certificate = false;
    SolveOutcome res = solve_glN(g.problem, so);
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      Report t = devega_transport_check(g.problem, *g.devega, res.solutions[i].roots, tol);
      out.solutions.push_back(json{{"roots", to_json(res.solutions[i].roots)}, {"transport", to_json(t)},
                                   {"certificate", to_json(res.solutions[i].certificate)}});
      merge_prefixed(out.report, t, "solution " + std::to_string(i) + ": ");
    }
    out.report.add_flag("at least one solution transported", "devega-bethe", !res.solutions.empty());
    out.conventions["q_power"] = g.devega->ratio_q_power;
  } else if (target == "frassek") {
    auto geti = [&](const char* k) {
      if (!in.contains(k) || !in[k].is_number_integer()) throw InputError(std::string("/") + k, "expected an integer");
      return in[k].get<int>();
    };
    const int L = geti("L"), m = geti("magnons");
    const Complex pb = complex_from_json(in.value("p", json()), "/p");
    const Complex qb = complex_from_json(in.value("q", json()), "/q");
    std::vector<Complex> roots = in.contains("roots") ? complex_list_from_json(in["roots"], "/roots")
                                                      : frassek_solve(L, m, pb, qb, st.solve.seed);
    out.report = frassek_match(roots, L, pb, qb, tol);
    out.solutions.push_back(json{{"roots", to_json(LevelRoots{roots})}});
  } else {
    throw InputError("/target", "expected one of vw, ynz, devega_example, devega, frassek");
  }
  return out;
}

// ---- asymptotics ----

Output run_asymptotics(const json& in) {
  Output out;
  TwistProfile Z;
  std::optional<DeVegaParams> dv;
  if (in.is_object() && in.contains("type")) {
    GLNProblemInput g = gln_problem_from_json(in);
    Z = g.problem.Z;
    dv = g.devega;
  } else {
    Z = twist_from_json(in, "");
  }
  const auto asy = asymptotics(Z);
  json comps = json::array();
  for (const auto& a : asy)
    comps.push_back(json{{"order_zero", a.order_zero},
                         {"coeff_zero", to_json(a.coeff_zero)},
                         {"order_inf", a.order_inf},
                         {"coeff_inf", to_json(a.coeff_inf)}});
  out.extra["asymptotics"] = comps;
  if (dv) {
    const auto expected = devega_expected_orders(*dv);
    for (std::size_t i = 0; i < asy.size() && i < expected.size(); ++i) {
      const bool ok = asy[i].order_zero == expected[i].first && asy[i].order_inf == expected[i].second;
      out.report.add_flag("xi_" + std::to_string(i + 1) + " orders at 0 and infinity", "devega-asymptotics", ok);
    }
  }
  return out;
}

json envelope(const std::string& command, const Output& o) {
  json j = to_json(o.report);
  j["command"] = command;
  j["pass"] = o.report.all_pass();
  j["solutions"] = o.solutions;
  j["conventions"] = o.conventions;
  for (const auto& [k, v] : o.extra.items()) j[k] = v;
  return j;
}

json load_input(const Flags& f, bool required) {
  if (f.input.empty()) {
    if (required) throw InputError("", "an input file is required (--input)");
    return json::object();
  }
  return read_json_file(f.input);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qoper: reflection-invariant q-opers, open-chain Bethe equations and their checks"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", flags.input, "input JSON file");
    if (needs_input) in->required();
    sub->add_option("-o,--output", flags.output, "report path (default: stdout)");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--tol", flags.tol, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--samples", flags.samples, "sample points per check")->check(CLI::PositiveNumber);
    sub->add_option("--starts", flags.starts, "multi-start count")->check(CLI::PositiveNumber);
    sub->add_option("--lattice-depth", flags.lattice_depth, "nondegeneracy lattice depth")->check(CLI::NonNegativeNumber);
    sub->add_flag("--exclude-self-term", flags.exclude_self_term, "drop the j = i factor in explicit product forms");
  };
  auto* solve = app.add_subcommand("solve", "solve a Bethe problem");
  auto* verify = app.add_subcommand("verify", "verify solutions against a problem");
  auto* qq = app.add_subcommand("qq-check", "check a QQ instance");
  auto* ident = app.add_subcommand("identity-suite", "laurent, twist and wronskian property checks");
  auto* lit = app.add_subcommand("literature-check", "literature dictionary transport checks");
  auto* asy = app.add_subcommand("asymptotics", "twist asymptotics at 0 and infinity");
  for (auto* s : {solve, verify, qq, lit, asy}) add_common(s, true);
  add_common(ident, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command;
  Output out;
  try {
    const json in = load_input(flags, !ident->parsed());
    const Settings st = settings_from(in, flags);
    if (solve->parsed()) {
      command = "solve";
      out = run_solve(in, st);
    } else if (verify->parsed()) {
      command = "verify";
      out = run_verify(in, st);
    } else if (qq->parsed()) {
      command = "qq-check";
      out = run_qq_check(in, st);
    } else if (ident->parsed()) {
      command = "identity-suite";
      out = run_identity_suite(flags, st);
    } else if (lit->parsed()) {
      command = "literature-check";
      out = run_literature(in, st);
    } else {
      command = "asymptotics";
      out = run_asymptotics(in);
    }
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    // domain and construction errors raised by the library on bad parameters
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  }

  const std::string text = envelope(command, out).dump(2) + "\n";
  if (flags.output.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream os(flags.output);
    if (!os) {
      std::fprintf(stderr, "cannot write %s\n", flags.output.c_str());
      return 2;
    }
    os << text;
  }
  return out.report.all_pass() ? 0 : 1;
}
