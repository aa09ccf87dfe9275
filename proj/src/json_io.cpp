#include "qoper/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qoper {

InputError::InputError(std::string f, const std::string& msg)
    : std::runtime_error((f.empty() ? std::string("/") : f) + ": " + msg), field(std::move(f)) {}

namespace {

std::string sub(const std::string& field, const std::string& key) { return field + "/" + key; }
std::string sub(const std::string& field, std::size_t i) { return field + "/" + std::to_string(i); }

const json& require(const json& j, const std::string& field, const char* key) {
  if (!j.is_object()) throw InputError(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(sub(field, key), "missing required field");
  return *it;
}

int int_from_json(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw InputError(field, "expected an integer");
  return j.get<int>();
}

int int_or(const json& j, const std::string& field, const char* key, int fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : int_from_json(*it, sub(field, key));
}

Complex complex_or(const json& j, const std::string& field, const char* key, Complex fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : complex_from_json(*it, sub(field, key));
}

std::optional<Complex> optional_complex(const json& j, const std::string& field, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return complex_from_json(*it, sub(field, key));
}

std::vector<int> int_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], sub(field, i)));
  return out;
}

std::string string_from_json(const json& j, const std::string& field) {
  if (!j.is_string()) throw InputError(field, "expected a string");
  return j.get<std::string>();
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("", origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(field, "expected a complex number [re, im] or a real number");
}

json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (auto z : v) a.push_back(to_json(z));
  return a;
}

std::vector<Complex> complex_list_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of complex numbers");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], sub(field, i)));
  return out;
}

json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, c.real(), c.imag()}));
  return json{{"terms", terms}};
}

LaurentPoly laurent_from_json(const json& j, const std::string& field) {
  const json& terms = require(j, field, "terms");
  const std::string tf = sub(field, "terms");
  if (!terms.is_array()) throw InputError(tf, "expected an array of [exponent, re, im]");
  std::map<int, Complex> m;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const json& t = terms[i];
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() || !t[2].is_number())
      throw InputError(sub(tf, i), "expected [exponent, re, im]");
    m[t[0].get<int>()] += Complex(t[1].get<double>(), t[2].get<double>());
  }
  return LaurentPoly(m);
}

json to_json(const RationalFn& f) { return json{{"num", to_json(f.num)}, {"den", to_json(f.den)}}; }

RationalFn rational_from_json(const json& j, const std::string& field) {
  RationalFn f(laurent_from_json(require(j, field, "num"), sub(field, "num")));
  if (j.contains("den")) f.den = laurent_from_json(j["den"], sub(field, "den"));
  if (f.den.is_zero()) throw InputError(sub(field, "den"), "zero denominator");
  return f;
}

json to_json(const SymmetricFactoredPoly& f) {
  return json{{"scale", to_json(f.scale)}, {"level", f.level}, {"roots", to_json(f.roots)}};
}

SymmetricFactoredPoly symmetric_from_json(const json& j, const std::string& field) {
  SymmetricFactoredPoly f;
  if (!j.is_object()) throw InputError(field, "expected an object");
  f.scale = complex_or(j, field, "scale", 1.0);
  f.level = int_from_json(require(j, field, "level"), sub(field, "level"));
  f.roots = complex_list_from_json(require(j, field, "roots"), sub(field, "roots"));
  return f;
}

json to_json(const TwistProfile& Z) {
  json xi = json::array();
  for (const auto& f : Z.xi) xi.push_back(to_json(f));
  return json{{"q", to_json(Z.q)}, {"xi", xi}};
}

TwistProfile twist_from_json(const json& j, const std::string& field) {
  TwistProfile Z;
  Z.q = complex_from_json(require(j, field, "q"), sub(field, "q"));
  const json& xi = require(j, field, "xi");
  if (!xi.is_array() || xi.size() < 2) throw InputError(sub(field, "xi"), "expected at least two components");
  for (std::size_t i = 0; i < xi.size(); ++i) Z.xi.push_back(rational_from_json(xi[i], sub(sub(field, "xi"), i)));
  return Z;
}

json to_json(const GL2TwistParams& t) {
  json j{{"kind", t.kind == GL2Kind::ConstantAsymptotics ? "constant" : "simple_pole"},
         {"mu", to_json(t.mu)},
         {"mu_tilde", to_json(t.mu_tilde)}};
  if (t.b) j["b"] = to_json(*t.b);
  if (t.b_tilde) j["b_tilde"] = to_json(*t.b_tilde);
  return j;
}

GL2TwistParams gl2_twist_from_json(const json& j, const std::string& field) {
  GL2TwistParams t;
  const std::string kind = string_from_json(require(j, field, "kind"), sub(field, "kind"));
  if (kind == "constant") {
    t.kind = GL2Kind::ConstantAsymptotics;
  } else if (kind == "simple_pole") {
    t.kind = GL2Kind::SimplePoleAtZero;
  } else {
    throw InputError(sub(field, "kind"), "expected \"constant\" or \"simple_pole\"");
  }
  t.mu = complex_from_json(require(j, field, "mu"), sub(field, "mu"));
  t.mu_tilde = complex_from_json(require(j, field, "mu_tilde"), sub(field, "mu_tilde"));
  t.b = optional_complex(j, field, "b");
  t.b_tilde = optional_complex(j, field, "b_tilde");
  if (t.kind == GL2Kind::SimplePoleAtZero && (!t.b || !t.b_tilde))
    throw InputError(field, "simple_pole twist requires b and b_tilde");
  return t;
}

json to_json(const DeVegaParams& d) {
  return json{{"kind", "devega"},
              {"l_minus", d.l_minus},
              {"l_plus", d.l_plus},
              {"b_minus", to_json(d.b_minus)},
              {"b_plus", to_json(d.b_plus)},
              {"mu_free", to_json(d.mu_free)},
              {"pole_at_zero", d.pole_at_zero},
              {"pole_b", to_json(d.pole_b)},
              {"pole_b_tilde", to_json(d.pole_b_tilde)},
              {"ratio_q_power", d.ratio_q_power}};
}

DeVegaParams devega_params_from_json(const json& j, const std::string& field, int n_rank) {
  if (!j.is_object()) throw InputError(field, "expected an object");
  DeVegaParams d;
  d.n_rank = n_rank;
  d.l_minus = int_or(j, field, "l_minus", 1);
  d.l_plus = int_or(j, field, "l_plus", 1);
  if (d.l_minus < 1 || d.l_minus > n_rank - 1) throw InputError(sub(field, "l_minus"), "must lie in 1..N-1");
  if (d.l_plus < 1 || d.l_plus > n_rank - 1) throw InputError(sub(field, "l_plus"), "must lie in 1..N-1");
  d.b_minus = complex_from_json(require(j, field, "b_minus"), sub(field, "b_minus"));
  d.b_plus = complex_from_json(require(j, field, "b_plus"), sub(field, "b_plus"));
  d.mu_free = complex_or(j, field, "mu_free", 1.0);
  if (j.contains("pole_at_zero")) {
    if (!j["pole_at_zero"].is_boolean()) throw InputError(sub(field, "pole_at_zero"), "expected a boolean");
    d.pole_at_zero = j["pole_at_zero"].get<bool>();
  }
  d.pole_b = complex_or(j, field, "pole_b", 1.0);
  d.pole_b_tilde = complex_or(j, field, "pole_b_tilde", 1.0);
  d.ratio_q_power = int_or(j, field, "ratio_q_power", 1);
  return d;
}

json to_json(const BetheProblemGL2& p) {
  return json{{"type", "gl2"},
              {"q", to_json(p.q)},
              {"magnons", p.magnons},
              {"inhomogeneities", to_json(p.inhomogeneities)},
              {"gamma", to_json(p.gamma)},
              {"twist", to_json(p.twist)}};
}

BetheProblemGL2 gl2_problem_from_json(const json& j, const std::string& field) {
  BetheProblemGL2 p;
  p.q = complex_from_json(require(j, field, "q"), sub(field, "q"));
  if (p.q == Complex(0.0)) throw InputError(sub(field, "q"), "q must be nonzero");
  p.magnons = int_from_json(require(j, field, "magnons"), sub(field, "magnons"));
  if (p.magnons < 0) throw InputError(sub(field, "magnons"), "must be nonnegative");
  p.inhomogeneities = complex_list_from_json(require(j, field, "inhomogeneities"), sub(field, "inhomogeneities"));
  p.gamma = complex_or(j, field, "gamma", 1.0);
  p.twist = gl2_twist_from_json(require(j, field, "twist"), sub(field, "twist"));
  return p;
}

json to_json(const EpsProblem& p) {
  return json{{"type", "xxx"},
              {"eps", to_json(p.eps)},
              {"m", to_json(p.m_b)},
              {"m_tilde", to_json(p.m_b_tilde)},
              {"inhomogeneities", to_json(p.inhomogeneities)},
              {"magnons", p.magnons}};
}

EpsProblem eps_problem_from_json(const json& j, const std::string& field) {
  EpsProblem p;
  p.eps = complex_from_json(require(j, field, "eps"), sub(field, "eps"));
  if (p.eps == Complex(0.0)) throw InputError(sub(field, "eps"), "eps must be nonzero");
  p.m_b = complex_from_json(require(j, field, "m"), sub(field, "m"));
  p.m_b_tilde = complex_from_json(require(j, field, "m_tilde"), sub(field, "m_tilde"));
  p.inhomogeneities = complex_list_from_json(require(j, field, "inhomogeneities"), sub(field, "inhomogeneities"));
  p.magnons = int_from_json(require(j, field, "magnons"), sub(field, "magnons"));
  if (p.magnons < 0) throw InputError(sub(field, "magnons"), "must be nonnegative");
  return p;
}

json to_json(const GLNProblemInput& in) {
  const auto& p = in.problem;
  json j{{"type", "gln"},
         {"q", to_json(p.q)},
         {"N", p.N},
         {"magnons", p.magnons},
         {"Lambda", to_json(p.Lambda)},
         {"symmetric_level_offset", p.symmetric_level_offset}};
  if (in.devega) {
    j["twist"] = to_json(*in.devega);
  } else {
    j["twist"] = json{{"kind", "explicit"}, {"xi", to_json(p.Z)["xi"]}};
  }
  return j;
}

GLNProblemInput gln_problem_from_json(const json& j, const std::string& field) {
  GLNProblemInput in;
  auto& p = in.problem;
  p.q = complex_from_json(require(j, field, "q"), sub(field, "q"));
  if (p.q == Complex(0.0)) throw InputError(sub(field, "q"), "q must be nonzero");
  p.N = int_from_json(require(j, field, "N"), sub(field, "N"));
  if (p.N < 2) throw InputError(sub(field, "N"), "N must be at least 2");
  p.magnons = int_list(require(j, field, "magnons"), sub(field, "magnons"));
  if (static_cast<int>(p.magnons.size()) != p.N - 1) throw InputError(sub(field, "magnons"), "needs N-1 entries");
  for (std::size_t i = 0; i < p.magnons.size(); ++i)
    if (p.magnons[i] < 0) throw InputError(sub(sub(field, "magnons"), i), "must be nonnegative");

  const json& tw = require(j, field, "twist");
  const std::string tf = sub(field, "twist");
  const std::string kind = tw.is_object() && tw.contains("kind")
                               ? string_from_json(tw["kind"], sub(tf, "kind"))
                               : std::string("explicit");
  std::vector<Complex> inhom;
  if (j.contains("inhomogeneities")) inhom = complex_list_from_json(j["inhomogeneities"], sub(field, "inhomogeneities"));

  if (kind == "devega") {
    in.devega = devega_params_from_json(tw, tf, p.N);
    try {
      p = devega_problem(*in.devega, p.q, p.magnons, inhom);
    } catch (const std::exception& e) {
      throw InputError(tf, e.what());
    }
  } else if (kind == "explicit") {
    if (!tw.is_object()) throw InputError(tf, "expected an object");
    json zj{{"q", to_json(p.q)}, {"xi", require(tw, tf, "xi")}};
    p.Z = twist_from_json(zj, tf);
    if (p.Z.N() != p.N) throw InputError(sub(tf, "xi"), "needs N components");
    p.symmetric_level_offset = 0;
    p.Lambda = SymmetricFactoredPoly{1.0, p.N - 1, inhom};
  } else {
    throw InputError(sub(tf, "kind"), "expected \"devega\" or \"explicit\"");
  }
  if (j.contains("symmetric_level_offset")) {
    const int off = int_from_json(j["symmetric_level_offset"], sub(field, "symmetric_level_offset"));
    if (off != 0 && off != 1) throw InputError(sub(field, "symmetric_level_offset"), "expected 0 or 1");
    p.symmetric_level_offset = off;
    p.Lambda.level = p.N - 1 + off;
  }
  if (j.contains("Lambda")) p.Lambda = symmetric_from_json(j["Lambda"], sub(field, "Lambda"));
  return in;
}

ProblemInput problem_from_json(const json& j, const std::string& field) {
  ProblemInput in;
  in.type = string_from_json(require(j, field, "type"), sub(field, "type"));
  if (in.type == "gl2") {
    in.gl2 = gl2_problem_from_json(j, field);
  } else if (in.type == "gln") {
    in.gln = gln_problem_from_json(j, field);
  } else if (in.type == "xxx") {
    in.xxx = eps_problem_from_json(j, field);
  } else {
    throw InputError(sub(field, "type"), "expected \"gl2\", \"gln\" or \"xxx\"");
  }
  return in;
}

json to_json(const ProblemInput& p) {
  if (p.type == "gl2") return to_json(p.gl2);
  if (p.type == "gln") return to_json(p.gln);
  return to_json(p.xxx);
}

json to_json(const QQInstanceGL2& inst) {
  return json{{"type", "gl2"},       {"q", to_json(inst.q)},     {"Qp", to_json(inst.Qp)},
              {"Qm", to_json(inst.Qm)}, {"xi1", to_json(inst.xi1)}, {"xi2", to_json(inst.xi2)},
              {"Lambda", to_json(inst.Lambda)}};
}

QQInstanceGL2 qq_gl2_from_json(const json& j, const std::string& field) {
  QQInstanceGL2 inst;
  inst.q = complex_from_json(require(j, field, "q"), sub(field, "q"));
  inst.Qp = laurent_from_json(require(j, field, "Qp"), sub(field, "Qp"));
  inst.Qm = laurent_from_json(require(j, field, "Qm"), sub(field, "Qm"));
  inst.xi1 = rational_from_json(require(j, field, "xi1"), sub(field, "xi1"));
  inst.xi2 = rational_from_json(require(j, field, "xi2"), sub(field, "xi2"));
  inst.Lambda = laurent_from_json(require(j, field, "Lambda"), sub(field, "Lambda"));
  return inst;
}

json to_json(const QQInstanceGLN& inst) {
  json qp = json::array(), qm = json::array();
  for (const auto& p : inst.Qp) qp.push_back(to_json(p));
  for (const auto& p : inst.Qm) qm.push_back(to_json(p));
  return json{{"type", "gln"}, {"q", to_json(inst.q)}, {"N", inst.N}, {"Qp", qp}, {"Qm", qm},
              {"twist", to_json(inst.Z)}};
}

QQInstanceGLN qq_gln_from_json(const json& j, const std::string& field) {
  QQInstanceGLN inst;
  inst.q = complex_from_json(require(j, field, "q"), sub(field, "q"));
  inst.N = int_from_json(require(j, field, "N"), sub(field, "N"));
  if (inst.N < 2) throw InputError(sub(field, "N"), "N must be at least 2");
  const json& qp = require(j, field, "Qp");
  const json& qm = require(j, field, "Qm");
  if (!qp.is_array() || static_cast<int>(qp.size()) != inst.N)
    throw InputError(sub(field, "Qp"), "expected N Laurent polynomials");
  if (!qm.is_array() || static_cast<int>(qm.size()) != inst.N - 1)
    throw InputError(sub(field, "Qm"), "expected N-1 Laurent polynomials");
  for (std::size_t i = 0; i < qp.size(); ++i) inst.Qp.push_back(laurent_from_json(qp[i], sub(sub(field, "Qp"), i)));
  for (std::size_t i = 0; i < qm.size(); ++i) inst.Qm.push_back(laurent_from_json(qm[i], sub(sub(field, "Qm"), i)));
  inst.Z = twist_from_json(require(j, field, "twist"), sub(field, "twist"));
  if (inst.Z.N() != inst.N) throw InputError(sub(field, "twist"), "needs N components");
  return inst;
}

json to_json(const LevelRoots& roots) {
  json a = json::array();
  for (const auto& lvl : roots) a.push_back(to_json(lvl));
  return a;
}

LevelRoots level_roots_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field, "expected an array of root levels");
  LevelRoots out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_list_from_json(j[i], sub(field, i)));
  return out;
}

json to_json(const BetheSolution& s) {
  return json{{"roots", to_json(s.roots)},
              {"residual_norm", s.residual_norm},
              {"iterations", s.iterations},
              {"nondegeneracy", to_json(s.nondegeneracy)},
              {"certificate", to_json(s.certificate)}};
}

json to_json(const SolveOutcome& out) {
  json sols = json::array();
  for (const auto& s : out.solutions) sols.push_back(to_json(s));
  return json{{"solutions", sols},
              {"starts", out.starts},
              {"converged", out.converged},
              {"duplicates", out.duplicates},
              {"rejected_degenerate", out.rejected_degenerate},
              {"rejected_certificate", out.rejected_certificate},
              {"notes", out.notes}};
}

json to_json(const SubstitutionYNZ& s) {
  return json{{"eta", to_json(s.eta)},
              {"v", to_json(s.v)},
              {"N_sites", s.N_sites},
              {"alpha_minus", to_json(s.alpha_minus)},
              {"alpha_plus", to_json(s.alpha_plus)},
              {"beta_minus", to_json(s.beta_minus)},
              {"beta_plus", to_json(s.beta_plus)},
              {"eps_signs", s.eps_signs}};
}

SubstitutionYNZ ynz_from_json(const json& j, const std::string& field) {
  SubstitutionYNZ s;
  s.eta = complex_from_json(require(j, field, "eta"), sub(field, "eta"));
  if (j.contains("v")) s.v = complex_list_from_json(j["v"], sub(field, "v"));
  s.N_sites = int_from_json(require(j, field, "N_sites"), sub(field, "N_sites"));
  s.alpha_minus = complex_from_json(require(j, field, "alpha_minus"), sub(field, "alpha_minus"));
  s.alpha_plus = complex_from_json(require(j, field, "alpha_plus"), sub(field, "alpha_plus"));
  s.beta_minus = complex_from_json(require(j, field, "beta_minus"), sub(field, "beta_minus"));
  s.beta_plus = complex_from_json(require(j, field, "beta_plus"), sub(field, "beta_plus"));
  if (j.contains("eps_signs")) {
    auto v = int_list(j["eps_signs"], sub(field, "eps_signs"));
    if (v.size() != 3) throw InputError(sub(field, "eps_signs"), "expected three signs");
    for (int i = 0; i < 3; ++i) {
      if (v[i] != 1 && v[i] != -1) throw InputError(sub(sub(field, "eps_signs"), i), "expected +1 or -1");
      s.eps_signs[i] = v[i];
    }
  }
  return s;
}

}  // namespace qoper
