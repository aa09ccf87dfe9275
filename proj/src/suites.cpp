#include "qoper/suites.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qoper/laurent.hpp"
#include "qoper/literature.hpp"
#include "qoper/qq.hpp"
#include "qoper/sampling.hpp"
#include "qoper/twist.hpp"
#include "qoper/wronskian.hpp"
#include "qoper/xxx_eps.hpp"

namespace qoper {

namespace {

double tol_or(const SuiteOptions& o, double t) { return o.tol.value_or(t); }
int samples_or(const SuiteOptions& o, int n) { return o.samples.value_or(n); }

// q away from the unit root 1, where the lattice degenerates
Complex draw_q(Sampler& s) {
  Complex q = s.annulus(0.6, 1.6);
  if (std::abs(q - 1.0) < 0.1) q *= 1.3;
  return q;
}

std::string tag(const char* base, int i) { return std::string(base) + " #" + std::to_string(i); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// largest distance from any element of `a` to its nearest element of `b`
double one_sided(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (Complex x : a) {
    double best = INFINITY;
    for (Complex y : b) best = std::min(best, rel(x, y));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

Report suite_reflection(const SuiteOptions& opt) {
  Sampler s(opt.seed);
  const double tol = tol_or(opt, 1e-10);
  const int n = samples_or(opt, 100);
  double worst_refl = 0.0, worst_det = 0.0;
  for (int i = 0; i < 20; ++i) {
    GL2TwistParams t;
    const Complex q = draw_q(s);
    t.mu = s.annulus(0.5, 2.0);
    t.mu_tilde = s.annulus(0.5, 2.0);
    t.b = s.annulus(0.5, 2.0);
    t.b_tilde = s.annulus(0.5, 2.0);
    for (auto Z : {build_gl2_constant(t, q), build_gl2_simple_pole(t, q)}) {
      worst_refl = std::max(worst_refl, check_reflection_gl2(Z, tol, n, opt.seed + i).max_residual());
      worst_det = std::max(worst_det, check_det_reflection_gl2(Z, tol, n, opt.seed + i).max_residual());
    }
  }
  Report r;
  r.add("xi_1(1/(qz)) = -xi_2(z), 20 draws x 2 kinds", "gl2-twist-reflection", worst_refl, tol);
  r.add("A(z)A(1/(qz)) = -det A(1/(qz)), 20 draws x 2 kinds", "gl2-det-reflection", worst_det, tol);
  return r;
}

Report suite_symmetry(const SuiteOptions& opt) {
  Sampler s(opt.seed + 1);
  const double tol = tol_or(opt, 1e-12), tol_add = tol_or(opt, 1e-13);
  double worst_lambda = 0.0, worst_q = 0.0, worst_eps_q = 0.0, worst_eps_lambda = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex q = draw_q(s);
    const int n = 1 + i % 4;
    std::vector<Complex> a, roots;
    for (int j = 0; j < n; ++j) a.push_back(s.annulus(0.5, 2.0));
    for (int j = 0; j < n; ++j) roots.push_back(s.annulus(0.5, 2.0));
    const LaurentPoly lam = expand(SymmetricFactoredPoly{s.gaussian_complex(), 1, a}, q);
    const LaurentPoly qp = expand(SymmetricFactoredPoly{1.0, 0, roots}, q);
    worst_lambda = std::max(worst_lambda, relative_distance(lam, reflect(lam, q, 1)));
    worst_q = std::max(worst_q, relative_distance(qp, reflect(qp, q, 0)));

    const Complex eps = s.gaussian_complex();
    const TaylorPoly eq = eps_Q(roots), el = eps_Lambda(a, eps);
    worst_eps_q = std::max(worst_eps_q, relative_distance(eq, reflect_additive(eq, eps, false)));
    worst_eps_lambda = std::max(worst_eps_lambda, relative_distance(el, reflect_additive(el, eps, true)));
  }
  Report r;
  r.add("Lambda invariant under z -> 1/(qz)", "lambda-symmetry", worst_lambda, tol);
  r.add("Q+ invariant under z -> 1/z", "qplus-symmetry", worst_q, tol);
  r.add("additive Q invariant under z -> -z", "eps-q-symmetry", worst_eps_q, tol_add);
  r.add("additive Lambda invariant under z -> -z-eps", "eps-lambda-symmetry", worst_eps_lambda, tol_add);
  return r;
}

Report suite_lewis_carroll(const SuiteOptions& opt) {
  Sampler s(opt.seed + 2);
  const double tol = tol_or(opt, 1e-10);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 4;
    EvaluatedMatrix M{n, Eigen::MatrixXcd(n, n), 0.0};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M.entries(a, b) = s.gaussian_complex();
    worst = std::max(worst, lewis_carroll_check(M, tol).max_residual());
  }
  Report r;
  r.add("Lewis Carroll identity, 100 matrices of size 3..6", "lewis-carroll", worst, tol);
  return r;
}

Report suite_wronskian(const SuiteOptions& opt) {
  Sampler s(opt.seed + 3);
  const double tol = tol_or(opt, 1e-10);
  const int n = samples_or(opt, 30);
  Report r;
  for (int N : {2, 3, 4}) {
    const Complex q = draw_q(s);
    TwistProfile Z;
    if (N == 2) {
      GL2TwistParams t;
      t.mu = s.annulus(0.5, 2.0);
      t.mu_tilde = s.annulus(0.5, 2.0);
      Z = build_gl2_constant(t, q);
    } else if (N == 3) {
      Z = build_gl3_example(s.annulus(0.5, 2.0), {s.annulus(0.5, 2.0)}, q, s.annulus(0.5, 2.0));
    } else {
      Z = build_gl4_example(s.annulus(0.5, 2.0), s.annulus(0.5, 2.0), q);
    }
    SectionVec sec;
    for (int i = 0; i < N; ++i)
      sec.components.push_back(
          expand(SymmetricFactoredPoly{s.gaussian_complex(), 0, {s.annulus(0.5, 2.0), s.annulus(0.5, 2.0)}}, q));
    double minor = 0.0, sym = 0.0;
    for (int k = 1; k <= N; ++k) {
      minor = std::max(minor, wronskian_minor_consistency(sec, Z, k, n, tol, opt.seed + k).max_residual());
      sym = std::max(sym, check_Dk_symmetry(sec, Z, k, n, tol, opt.seed + k).max_residual());
    }
    const std::string sN = "N=" + std::to_string(N);
    r.add("D_k equals signed Q_k^+ minor, " + sN, "wronskian-minor", minor, tol);
    r.add("D_k(1/(q^{k-1}z)) = D_k(z), " + sN, "wronskian-reflection", sym, tol);
  }
  return r;
}

Report identity_suite(const SuiteOptions& opt) {
  Report r;
  r.merge(suite_reflection(opt));
  r.merge(suite_symmetry(opt));
  r.merge(suite_lewis_carroll(opt));
  r.merge(suite_wronskian(opt));
  return r;
}

Report suite_gl2_end_to_end(const SuiteOptions& opt, std::vector<SolvedGL2>* solved) {
  Sampler s(opt.seed + 4);
  const double res_tol = 1e-11, cert_tol = 1e-9, oracle_tol = 1e-9;
  Report r;
  for (int i = 0; i < 10; ++i) {
    BetheProblemGL2 p;
    p.q = draw_q(s);
    p.twist.mu = s.annulus(0.5, 2.0);
    p.twist.mu_tilde = s.annulus(0.5, 2.0);
    const int n = 1 + i % 3;
    for (int j = 0; j < n; ++j) p.inhomogeneities.push_back(s.annulus(0.5, 2.0));
    // k <= n: with more magnons than sites every solution is degenerate
    p.magnons = std::min(n, 1 + (i / 3) % 2);

    SolveOptions so;
    so.seed = opt.seed + i;
    so.starts = opt.starts;
    so.lattice_depth = opt.lattice_depth;
    so.certificate_tol = cert_tol;
    SolveOutcome out = solve_gl2(p, so);

    double res = 0.0, cert = 0.0;
    bool nondeg = true;
    for (const auto& sol : out.solutions) {
      res = std::max(res, sol.residual_norm);
      cert = std::max(cert, sol.certificate.max_residual());
      nondeg = nondeg && gl2_nondegeneracy(sol.roots[0], p, 5).all_pass();
    }
    const std::string lbl = " (n=" + std::to_string(n) + ", k=" + std::to_string(p.magnons) + ")";
    r.add_flag(tag("solutions found", i) + lbl, "gl2-bethe", !out.solutions.empty());
    r.add(tag("cleared residual", i), "gl2-bethe", out.solutions.empty() ? INFINITY : res, res_tol);
    r.add_flag(tag("nondegeneracy at depth 5", i), "gl2-nondegeneracy", nondeg);
    r.add(tag("QQ certificate", i), "gl2-qq", out.solutions.empty() ? INFINITY : cert, cert_tol);

    if (p.magnons == 1) {
      Report o = oracle_comparison_gl2(p, out, 5, oracle_tol);
      r.add(tag("one-magnon roots match companion oracle", i), "gl2-bethe", o.max_residual(), oracle_tol);
    }
    if (solved) solved->push_back({p, std::move(out)});
  }
  return r;
}

Report suite_glN_devega(const SuiteOptions& opt) {
  DeVegaParams d;
  d.n_rank = 3;
  d.l_minus = 1;
  d.l_plus = 1;
  d.b_minus = {0.7, 0.3};
  d.b_plus = {1.2, -0.4};
  d.ratio_q_power = -1;
  const Complex q{0.8, 0.5};
  BetheProblemGLN p = devega_problem(d, q, {1, 1}, {Complex(1.3, 0.2), Complex(0.6, -0.9)});

  SolveOptions so;
  so.seed = opt.seed;
  so.starts = opt.starts;
  so.lattice_depth = opt.lattice_depth;
  so.certificate_tol = 1e-8;
  so.gate_certificate = false;
  SolveOutcome out = solve_glN(p, so);

  Report r;
  r.add_flag("N=3 De Vega, p=(1,1): solutions found", "glN-bethe", !out.solutions.empty());
  double res = out.solutions.empty() ? INFINITY : 0.0;
  double cert = out.solutions.empty() ? INFINITY : 0.0;
  nlohmann::json per_level = nlohmann::json::array();
  for (const auto& sol : out.solutions) {
    res = std::max(res, sol.residual_norm);
    cert = std::max(cert, sol.certificate.max_residual());
    nlohmann::json lv = nlohmann::json::array();
    for (const auto& c : sol.certificate.checks) lv.push_back({{"check", c.name}, {"residual", c.max_residual}});
    per_level.push_back(lv);
  }
  r.add("N=3 De Vega: GL(N) Bethe residual", "glN-bethe", res, 1e-9);
  r.add("N=3 De Vega: per-level QQ certificates", "glN-qq", cert, 1e-8);
  r.data["certificates"] = per_level;
  r.data["solutions"] = static_cast<int>(out.solutions.size());
  return r;
}

Report suite_literature(const SuiteOptions& opt, const std::vector<SolvedGL2>& solved) {
  Report r;
  double vw = 0.0, vw_printed = 0.0;
  int mapped = 0;
  for (const auto& inst : solved)
    for (const auto& sol : inst.outcome.solutions) {
      Report t = vw_transport_check(inst.problem, sol.roots[0], 1e-9);
      vw = std::max(vw, t.max_residual());
      if (t.data.contains("printed_dictionary_residual"))
        vw_printed = std::max(vw_printed, t.data["printed_dictionary_residual"].get<double>());
      ++mapped;
    }
  r.add("VW transport of GL(2) solutions", "vw-bethe", mapped ? vw : INFINITY, 1e-9);
  r.data["vw_solutions_mapped"] = mapped;
  r.data["vw_printed_dictionary_residual"] = vw_printed;

  SubstitutionYNZ y;
  y.eta = {0.3, 0.2};
  y.N_sites = 2;
  y.alpha_minus = {0.1, 0.3};
  y.alpha_plus = {-0.2, 0.1};
  y.beta_minus = {0.3, -0.2};
  y.beta_plus = {0.05, 0.4};
  y.eps_signs = {1, -1, 1};
  y.v.resize(1);
  SolveOptions so;
  so.seed = opt.seed;
  so.starts = opt.starts;
  so.lattice_depth = opt.lattice_depth;
  SolveOutcome yo = solve_gl2(ynz_problem(y), so);
  double ynz = yo.solutions.empty() ? INFINITY : 0.0;
  for (const auto& sol : yo.solutions) ynz = std::max(ynz, ynz_transport_check(y, sol.roots[0], 1e-9).max_residual());
  r.add("YNZ transport of simple-pole solutions", "ynz-bethe", ynz, 1e-9);
  r.data["ynz_solutions_mapped"] = static_cast<int>(yo.solutions.size());

  DeVegaParams d;
  d.b_minus = {0.7, 0.3};
  d.b_plus = {1.2, -0.4};
  Report ex = devega_example_check(d, {0.8, 0.5}, samples_or(opt, 50), 1e-10, opt.seed);
  for (auto c : ex.checks) {
    c.name = "De Vega N=2 example: " + c.name;
    r.checks.push_back(c);
  }
  r.data["devega_q_powers"] = ex.data.value("q_powers", nlohmann::json::array());
  return r;
}

Report oracle_comparison_gl2(const BetheProblemGL2& p, const SolveOutcome& out, int depth, double tol) {
  if (p.magnons != 1) throw DomainError("oracle comparison needs one magnon");
  std::vector<Complex> oracle;
  for (Complex t : brute_force_univariate(p)) {
    if (!gl2_nondegeneracy({t}, p, depth).all_pass()) continue;
    const Complex c = canonical_root(t, p.q, 0);
    if (oracle.empty() || one_sided({c}, oracle) > 1e-8) oracle.push_back(c);
  }
  std::vector<Complex> found;
  for (const auto& sol : out.solutions) found.push_back(canonical_root(sol.roots.at(0).at(0), p.q, 0));
  const double miss = std::max(one_sided(oracle, found), one_sided(found, oracle));
  Report r;
  r.add("one-magnon roots match companion oracle", "gl2-bethe", oracle.empty() ? INFINITY : miss, tol);
  r.data["oracle_roots"] = static_cast<int>(oracle.size());
  r.data["found_roots"] = static_cast<int>(found.size());
  return r;
}

Report oracle_comparison_eps(const EpsProblem& p, const SolveOutcome& out, int depth, double tol, EpsForm form) {
  if (p.magnons != 1) throw DomainError("oracle comparison needs one magnon");
  std::vector<Complex> oracle, found;
  for (Complex t : brute_force_univariate_eps(p, form)) {
    if (!additive_nondegeneracy({t}, p, depth).all_pass()) continue;
    // the abstract form identifies s with -s
    const Complex c = form == EpsForm::Abstract && (t.real() < 0.0 || (t.real() == 0.0 && t.imag() < 0.0)) ? -t : t;
    if (oracle.empty() || one_sided({c}, oracle) > 1e-8) oracle.push_back(c);
  }
  for (const auto& sol : out.solutions) found.push_back(sol.roots.at(0).at(0));
  const double miss = std::max(one_sided(oracle, found), one_sided(found, oracle));
  Report r;
  r.add("one-magnon eps roots match companion oracle", "eps-bethe",
        oracle.empty() || found.empty() ? INFINITY : miss, tol);
  r.data["oracle_roots"] = static_cast<int>(oracle.size());
  r.data["found_roots"] = static_cast<int>(found.size());
  return r;
}

std::vector<Complex> frassek_solve(int L, int magnons, Complex p_b, Complex q_b, std::uint64_t seed) {
  ClearedSystem F = [&](const std::vector<Complex>& x) {
    std::vector<ClearedEq> eqs;
    for (Complex v : frassek_residual(x, L, p_b, q_b)) eqs.push_back({v + 1.0, 1.0});
    return eqs;
  };
  Sampler s(seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Complex> x0;
    for (int i = 0; i < magnons; ++i) x0.push_back(s.gaussian_complex(1.5));
    NewtonResult nr;
    try {
      nr = damped_newton(F, x0, 1e-13, 200);
    } catch (const std::runtime_error&) {
      continue;
    }
    if (!nr.converged || !(nr.residual < 1e-12)) continue;
    // skip the trivial points z_k in {0, -1/2}, where factors vanish or blow up
    bool ok = true;
    for (Complex t : nr.x) ok = ok && std::abs(t - 0.5) > 1e-6 && std::abs(t) > 1e-6;
    for (std::size_t i = 0; i < nr.x.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) ok = ok && std::abs(nr.x[i] - nr.x[j]) > 1e-6;
    if (ok) return nr.x;
  }
  return {};
}

Report suite_xxx(const SuiteOptions& opt) {
  Sampler s(opt.seed + 5);
  Report r;
  double phi = 0.0;
  for (int i = 0; i < 20; ++i) {
    EpsProblem p;
    p.eps = s.gaussian_complex();
    p.m_b = s.gaussian_complex();
    p.m_b_tilde = s.gaussian_complex();
    auto [phi1, phi2] = build_phi_polys(p);
    phi = std::max(phi, relative_distance(reflect_additive(phi1, p.eps, true), Complex(-1.0) * phi2));
  }
  r.add("phi_1(-z-eps) = -phi_2(z), coefficientwise", "eps-phi-reflection", phi, tol_or(opt, 1e-13));

  for (int i = 0; i < 5; ++i) {
    EpsProblem p;
    p.eps = 1.0 + 0.5 * s.gaussian_complex();
    p.m_b = s.gaussian_complex(0.5);
    p.m_b_tilde = s.gaussian_complex(0.5);
    const int n = 1 + i % 2;
    for (int j = 0; j < n; ++j) p.inhomogeneities.push_back(s.gaussian_complex(0.5));
    p.magnons = 1;
    SolveOptions so;
    so.seed = opt.seed + i;
    so.starts = opt.starts;
    so.lattice_depth = opt.lattice_depth;
    SolveOutcome out = solve_eps(p, so);
    Report o = oracle_comparison_eps(p, out, 5, 1e-10);
    r.add(tag("one-magnon eps roots match companion oracle", i), "eps-bethe", o.max_residual(), 1e-10);
  }

  // Frassek instance: eps = 1, a_j = 1/2
  const int L = 2;
  const Complex p_b{0.3, 0.2}, q_b{-0.4, 0.7};
  std::vector<Complex> roots = frassek_solve(L, 1, p_b, q_b, opt.seed + 6);
  Report fm = frassek_match(roots, L, p_b, q_b, 1e-9);
  for (auto c : fm.checks) {
    c.name = "Frassek match: " + c.name;
    r.checks.push_back(c);
  }
  r.data["frassek_roots"] = nlohmann::json::array();
  for (Complex t : roots) r.data["frassek_roots"].push_back({t.real(), t.imag()});
  r.data["frassek_dictionary"] = fm.data;
  // informational: the abstract form reduces to the p = -1 Frassek equations
  std::vector<Complex> abs_roots = frassek_solve(L, 1, -1.0, q_b, opt.seed + 7);
  Report fa = frassek_match_abstract(abs_roots, L, q_b, 1e-9);
  r.data["frassek_abstract_reduction_residual"] = fa.max_residual();
  return r;
}

}  // namespace qoper
