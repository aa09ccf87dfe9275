#include "qoper/xxx_eps.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qoper/sampling.hpp"

namespace qoper {

TaylorPoly::TaylorPoly(std::vector<Complex> c) : c_(std::move(c)) { trim(); }

TaylorPoly TaylorPoly::constant(Complex c) { return TaylorPoly({c}); }

TaylorPoly TaylorPoly::linear(Complex a, Complex b) { return TaylorPoly({b, a}); }

void TaylorPoly::trim() {
  for (const auto& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("non-finite coefficient");
  while (!c_.empty() && std::abs(c_.back()) < kPruneThreshold) c_.pop_back();
}

Complex TaylorPoly::operator()(Complex z) const {
  Complex v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * z + *it;
  return v;
}

double TaylorPoly::norm_inf() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b) {
  std::vector<Complex> c(std::max(a.coefficients().size(), b.coefficients().size()), 0.0);
  for (size_t i = 0; i < a.coefficients().size(); ++i) c[i] += a.coefficients()[i];
  for (size_t i = 0; i < b.coefficients().size(); ++i) c[i] += b.coefficients()[i];
  return TaylorPoly(c);
}

TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b) { return a + Complex(-1.0) * b; }

TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b) {
  if (a.is_zero() || b.is_zero()) return TaylorPoly();
  const auto &x = a.coefficients(), &y = b.coefficients();
  std::vector<Complex> c(x.size() + y.size() - 1, 0.0);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) c[i + j] += x[i] * y[j];
  return TaylorPoly(c);
}

TaylorPoly operator*(Complex s, const TaylorPoly& a) {
  std::vector<Complex> c = a.coefficients();
  for (auto& v : c) v *= s;
  return TaylorPoly(c);
}

TaylorPoly compose_linear(const TaylorPoly& p, Complex a, Complex b) {
  // Horner in the polynomial ring
  TaylorPoly out, lin = TaylorPoly::linear(a, b);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) out = out * lin + TaylorPoly::constant(*it);
  return out;
}

double relative_distance(const TaylorPoly& a, const TaylorPoly& b) {
  double s = std::max(a.norm_inf(), b.norm_inf());
  if (s == 0.0) return 0.0;
  return (a - b).norm_inf() / s;
}

LaurentPoly to_laurent(const TaylorPoly& p) {
  std::map<int, Complex> t;
  for (size_t i = 0; i < p.coefficients().size(); ++i) t[static_cast<int>(i)] = p.coefficients()[i];
  return LaurentPoly(t);
}

TaylorPoly eps_shift(const TaylorPoly& p, Complex eps, int m) {
  return compose_linear(p, 1.0, static_cast<double>(m) * eps);
}

TaylorPoly reflect_additive(const TaylorPoly& p, Complex eps, bool shifted) {
  return compose_linear(p, -1.0, shifted ? -eps : Complex(0.0));
}

TaylorPoly eps_Q(const std::vector<Complex>& roots) {
  TaylorPoly out = TaylorPoly::constant(1.0);
  for (Complex s : roots) out = out * TaylorPoly::linear(1.0, -s) * TaylorPoly::linear(-1.0, -s);
  return out;
}

TaylorPoly eps_Lambda(const std::vector<Complex>& a, Complex eps) {
  TaylorPoly out = TaylorPoly::constant(1.0);
  for (Complex x : a) out = out * TaylorPoly::linear(1.0, -x) * TaylorPoly::linear(-1.0, -eps - x);
  return out;
}

std::pair<TaylorPoly, TaylorPoly> build_phi_polys(const EpsProblem& p) {
  const Complex e = p.eps, m = p.m_b, mt = p.m_b_tilde;
  TaylorPoly phi1 = TaylorPoly::linear(2.0, 2.0 * e + 1.0) * TaylorPoly::linear(1.0, e + m - 0.5) *
                    TaylorPoly::linear(1.0, e + mt - 0.5);
  TaylorPoly phi2 =
      TaylorPoly::linear(2.0, -1.0) * TaylorPoly::linear(1.0, -m + 0.5) * TaylorPoly::linear(1.0, -mt + 0.5);
  return {phi1, phi2};
}

std::pair<RationalFn, RationalFn> build_phi(const EpsProblem& p) {
  auto [a, b] = build_phi_polys(p);
  return {RationalFn(to_laurent(a)), RationalFn(to_laurent(b))};
}

namespace {

// numerator and denominator of the explicit product for root i
std::pair<Complex, Complex> explicit_parts(const std::vector<Complex>& roots, size_t i, const EpsProblem& p,
                                           bool exclude_self) {
  const Complex e = p.eps, m = p.m_b, mt = p.m_b_tilde, s = roots[i];
  Complex num = (2.0 * s + 2.0 * e + 1.0) * (s + m + e - 0.5) * (s + mt + e - 0.5);
  Complex den = (2.0 * s - 2.0 * e - 1.0) * (s + m - e - 0.5) * (s + mt - e - 0.5);
  for (size_t k = 0; k < roots.size(); ++k) {
    if (exclude_self && k == i) continue;
    Complex t = roots[k];
    num *= (s - t + e) * (s + t + e);
    den *= (s - t - e) * (s + t - e);
  }
  for (Complex a : p.inhomogeneities) {
    num *= (s + a - e) * (-s + a);
    den *= (s + a) * (-s - e + a);
  }
  return {num, den};
}

Complex eval_Q(const std::vector<Complex>& roots, Complex z) {
  Complex v = 1.0;
  for (Complex s : roots) v *= (z - s) * (-z - s);
  return v;
}

}  // namespace

std::vector<Complex> residual_eps(const std::vector<Complex>& roots, const EpsProblem& p, bool exclude_self_term) {
  std::vector<Complex> out;
  for (size_t i = 0; i < roots.size(); ++i) {
    auto [num, den] = explicit_parts(roots, i, p, exclude_self_term);
    if (std::abs(den) < kPoleGuard * std::max(1.0, std::abs(num))) throw PoleError("explicit eps form at a pole");
    out.push_back(num / den - 1.0);
  }
  return out;
}

std::vector<Complex> residual_eps_abstract(const std::vector<Complex>& roots, const EpsProblem& p) {
  auto [phi1, phi2] = build_phi_polys(p);
  TaylorPoly L = eps_Lambda(p.inhomogeneities, p.eps);
  const Complex e = p.eps;
  std::vector<Complex> out;
  for (Complex s : roots) {
    Complex den = phi2(s - e) * eval_Q(roots, s - e) * L(s);
    Complex num = -phi1(s) * eval_Q(roots, s + e) * L(s - e);
    if (std::abs(den) < kPoleGuard * std::max(1.0, std::abs(num))) throw PoleError("abstract eps form at a pole");
    out.push_back(num / den - 1.0);
  }
  return out;
}

std::vector<ClearedEq> cleared_eps(const std::vector<Complex>& roots, const EpsProblem& p, EpsForm form) {
  std::vector<ClearedEq> out;
  if (form == EpsForm::Explicit) {
    for (size_t i = 0; i < roots.size(); ++i) {
      auto [num, den] = explicit_parts(roots, i, p, false);
      out.push_back({num, den});
    }
    return out;
  }
  auto [phi1, phi2] = build_phi_polys(p);
  TaylorPoly L = eps_Lambda(p.inhomogeneities, p.eps);
  const Complex e = p.eps;
  for (Complex s : roots)
    out.push_back({-phi1(s) * eval_Q(roots, s + e) * L(s - e), phi2(s - e) * eval_Q(roots, s - e) * L(s)});
  return out;
}

TaylorPoly cleared_univariate_eps(const EpsProblem& p, EpsForm form) {
  if (p.magnons != 1) throw DomainError("univariate oracle needs exactly one magnon");
  const Complex e = p.eps, m = p.m_b, mt = p.m_b_tilde;
  using T = TaylorPoly;
  T lhs, rhs;
  if (form == EpsForm::Explicit) {
    lhs = T::linear(2.0, 2.0 * e + 1.0) * T::linear(1.0, m + e - 0.5) * T::linear(1.0, mt + e - 0.5) *
          (e * T::linear(2.0, e));
    rhs = T::linear(2.0, -2.0 * e - 1.0) * T::linear(1.0, m - e - 0.5) * T::linear(1.0, mt - e - 0.5) *
          (-e * T::linear(2.0, -e));
    for (Complex a : p.inhomogeneities) {
      lhs = lhs * T::linear(1.0, a - e) * T::linear(-1.0, a);
      rhs = rhs * T::linear(1.0, a) * T::linear(-1.0, a - e);
    }
  } else {
    auto [phi1, phi2] = build_phi_polys(p);
    T L = eps_Lambda(p.inhomogeneities, e);
    // Q(s+eps) = eps(-2s-eps), Q(s-eps) = -eps(eps-2s) for the single root s
    lhs = Complex(-1.0) * phi1 * (e * T::linear(-2.0, -e)) * eps_shift(L, e, -1);
    rhs = eps_shift(phi2, e, -1) * (-e * T::linear(-2.0, e)) * L;
  }
  T P = lhs - rhs;
  if (P.is_zero() || P.norm_inf() <= 1e-13 * std::max(lhs.norm_inf(), rhs.norm_inf()))
    throw DegenerateProblem("cleared univariate polynomial vanishes identically");
  return P;
}

std::vector<Complex> taylor_roots(const TaylorPoly& p) {
  auto r = laurent_roots(to_laurent(p));
  // laurent_roots drops zero roots; restore their multiplicity
  int zeros = 0;
  for (const auto& c : p.coefficients()) {
    if (c != Complex(0.0)) break;
    ++zeros;
  }
  r.insert(r.end(), zeros, Complex(0.0));
  return r;
}

std::vector<Complex> brute_force_univariate_eps(const EpsProblem& p, EpsForm form, double filter_tol) {
  TaylorPoly P = cleared_univariate_eps(p, form);
  std::vector<Complex> dc;
  for (size_t i = 1; i < P.coefficients().size(); ++i) dc.push_back(P.coefficients()[i] * static_cast<double>(i));
  TaylorPoly dP(dc);
  std::vector<Complex> out;
  for (Complex s : taylor_roots(P)) {
    for (int it = 0; it < 3; ++it) {
      Complex d = dP(s);
      if (d == Complex(0.0)) break;
      Complex next = s - P(s) / d;
      if (std::abs(P(next)) < std::abs(P(s))) s = next;
    }
    try {
      auto r = form == EpsForm::Explicit ? residual_eps({s}, p) : residual_eps_abstract({s}, p);
      if (std::abs(r[0]) < filter_tol) out.push_back(s);
    } catch (const std::runtime_error&) {
    }
  }
  return out;
}

Report additive_nondegeneracy(const std::vector<Complex>& roots, const EpsProblem& p, int depth) {
  const Complex e = p.eps;
  auto close = [](Complex a, Complex b) { return std::abs(a - b) <= 1e-8 * std::max({1.0, std::abs(a), std::abs(b)}); };
  auto on_lattice = [&](Complex v) {
    for (int k = -depth; k <= depth; ++k)
      if (close(v, static_cast<double>(k) * e)) return true;
    return false;
  };
  std::vector<Complex> refs = p.inhomogeneities;
  refs.push_back(-e - 0.5);
  refs.push_back(-e - p.m_b + 0.5);
  refs.push_back(-e - p.m_b_tilde + 0.5);
  nlohmann::json viol = nlohmann::json::array();
  for (size_t i = 0; i < roots.size(); ++i) {
    Complex t = roots[i];
    if (on_lattice(2.0 * t)) viol.push_back({{"root", i}, {"reason", "self-reflection lattice"}});
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (on_lattice(t - roots[j]) || on_lattice(t + roots[j]))
        viol.push_back({{"root", i}, {"other_root", j}, {"reason", "common lattice"}});
    for (Complex r : refs)
      if (on_lattice(t - r) || on_lattice(t + r))
        viol.push_back({{"root", i}, {"reason", "lattice of a singularity or twist zero"}});
  }
  Report rep;
  rep.data["violations"] = viol;
  rep.add("no two zeros on a common eps-lattice", "nondegeneracy-additive", static_cast<double>(viol.size()), 0.0);
  return rep;
}

AdditiveQminusFit recover_Qminus_additive(Complex eps, const TaylorPoly& Qp, const TaylorPoly& phi_a,
                                          const TaylorPoly& phi_b, const TaylorPoly& rhs, int degree_bound,
                                          std::uint64_t seed) {
  if (degree_bound < 0) throw DomainError("degree_bound must be nonnegative");
  const int n = degree_bound + 1;
  Sampler sampler(seed);
  auto build = [&](Complex z, Eigen::RowVectorXcd& row, Complex& b, double& scale) {
    Complex fb = phi_b(z) * Qp(z), fa = phi_a(z) * Qp(z + eps);
    row.resize(n);
    for (int c = 0; c < n; ++c) row(c) = fb * std::pow(z + eps, c) - fa * std::pow(z, c);
    b = rhs(z);
    scale = std::max(std::abs(b), row.cwiseAbs().maxCoeff());
    if (scale == 0.0) scale = 1.0;
  };
  std::vector<Complex> pts;
  for (int i = 0; i < 4 * n; ++i) pts.push_back(sampler.gaussian_complex(1.5));
  Eigen::MatrixXcd A(pts.size(), n);
  Eigen::VectorXcd b(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    Eigen::RowVectorXcd row;
    Complex bi;
    double s;
    build(pts[i], row, bi, s);
    A.row(i) = row / s;
    b(i) = bi / s;
  }
  Eigen::VectorXd colscale = A.colwise().norm().transpose();
  for (int c = 0; c < n; ++c) {
    if (colscale(c) == 0.0) throw RankError("zero column in additive Q- recovery");
    A.col(c) /= colscale(c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-11 * sv(0))) throw RankError("rank-deficient additive Q- recovery");
  Eigen::VectorXcd x = svd.solve(b);
  std::vector<Complex> c(n);
  for (int i = 0; i < n; ++i) c[i] = x(i) / colscale(i);
  AdditiveQminusFit fit;
  fit.Qm = TaylorPoly(c);
  auto rel = [&](Complex z) {
    Complex t1 = phi_b(z) * Qp(z) * fit.Qm(z + eps), t2 = phi_a(z) * fit.Qm(z) * Qp(z + eps), t3 = rhs(z);
    double s = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    return s == 0.0 ? 0.0 : std::abs(t1 - t2 - t3) / s;
  };
  for (Complex z : pts) fit.fit_residual = std::max(fit.fit_residual, rel(z));
  Sampler fresh(seed + 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < 2 * n; ++i) fit.fresh_residual = std::max(fit.fresh_residual, rel(fresh.gaussian_complex(1.5)));
  return fit;
}

Report eps_certificate(const std::vector<Complex>& roots, const EpsProblem& p, double tol, std::uint64_t seed) {
  Report r;
  auto [phi1, phi2] = build_phi_polys(p);
  TaylorPoly Qp = eps_Q(roots), L = eps_Lambda(p.inhomogeneities, p.eps);
  try {
    auto fit = recover_Qminus_additive(p.eps, Qp, phi1, phi2, L, Qp.degree() + L.degree(), seed);
    r.add("additive Q- recovery certificate", "eps-qq-certificate", std::max(fit.fit_residual, fit.fresh_residual),
          tol);
    r.data["fit_residual"] = fit.fit_residual;
    r.data["fresh_residual"] = fit.fresh_residual;
  } catch (const RankError& e) {
    r.add_flag("additive Q- recovery certificate", "eps-qq-certificate", false);
    r.notes.push_back(e.what());
  }
  return r;
}

SolveOutcome solve_eps(const EpsProblem& p, const SolveOptions& opt, EpsForm form) {
  if (p.eps == Complex(0.0)) throw DomainError("eps must be nonzero");
  MultiStartSpec spec;
  spec.system = [&, form](const std::vector<Complex>& x) { return cleared_eps(x, p, form); };
  spec.sizes = {p.magnons};
  spec.levels = {0};
  spec.anchors = p.inhomogeneities;
  spec.q = 1.0;
  // The abstract form is parity symmetric, so s and -s are identified; the
  // explicit form is not, and keeps roots as found.
  const bool fold = form == EpsForm::Abstract;
  spec.canonical = [fold](const LevelRoots& r) {
    LevelRoots out = r;
    for (auto& l : out) {
      if (fold)
        for (auto& t : l)
          if (t.real() < 0.0 || (t.real() == 0.0 && t.imag() < 0.0)) t = -t;
      std::sort(l.begin(), l.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
    }
    return out;
  };
  spec.nondegeneracy = [&](const LevelRoots& r) { return additive_nondegeneracy(r[0], p, opt.lattice_depth); };
  spec.rational_residual = [&, form](const LevelRoots& r) {
    auto v = form == EpsForm::Abstract ? residual_eps_abstract(r[0], p) : residual_eps(r[0], p);
    double m = 0.0;
    for (Complex c : v) m = std::max(m, std::abs(c));
    return m;
  };
  SolveOutcome out = multi_start_solve(spec, opt);
  out.notes.push_back("additive form: no QQ certificate gate (no polynomial Q- in general)");
  return out;
}

Report verify_solution(const EpsProblem& p, const BetheSolution& s, const SolveOptions& opt, EpsForm form) {
  Report r;
  const auto& roots = s.roots.empty() ? std::vector<Complex>{} : s.roots[0];
  if (static_cast<int>(roots.size()) != p.magnons) {
    r.add_flag("root count matches magnons", "eps-bethe", false);
    return r;
  }
  try {
    double m = 0.0;
    for (const auto& e : cleared_eps(roots, p, form)) m = std::max(m, e.relative());
    r.add("cleared Bethe residual", "eps-bethe", m, 10 * opt.tol);
  } catch (const std::runtime_error& e) {
    r.add_flag("cleared Bethe residual", "eps-bethe", false);
    r.notes.push_back(e.what());
  }
  r.merge(additive_nondegeneracy(roots, p, opt.lattice_depth));
  r.data["certificate"] = to_json(eps_certificate(roots, p, opt.certificate_tol, opt.seed));
  r.notes.push_back("additive form: no QQ certificate gate (no polynomial Q- in general)");
  return r;
}

std::vector<Complex> frassek_residual(const std::vector<Complex>& roots, int L, Complex p_b, Complex q_b,
                                      bool exclude_self_term) {
  std::vector<Complex> out;
  for (size_t i = 0; i < roots.size(); ++i) {
    Complex z = roots[i] - 0.5;
    Complex v = -(2.0 * z) / (2.0 * z + 2.0) * (z - p_b + 1.0) * (z - q_b + 1.0) / ((z + p_b) * (z + q_b));
    for (size_t k = 0; k < roots.size(); ++k) {
      if (exclude_self_term && k == i) continue;
      Complex zk = roots[k] - 0.5;
      v *= (z - zk + 1.0) * (z + zk + 2.0) / ((z - zk - 1.0) * (z + zk));
    }
    v *= std::pow(z / (z + 1.0), 2 * L);
    out.push_back(v - 1.0);
  }
  return out;
}

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (Complex c : v) m = std::max(m, std::abs(c));
  return m;
}

// One-body factors in z = s - 1/2 at eps = 1, a_j = 1/2: boundary factor times
// the k = i term of the magnon product when that term is kept. Two-body and
// site factors of the two forms coincide, so only these need to match.
Complex explicit_one_body(Complex z, Complex m, Complex mt, bool self) {
  Complex v = (z + 2.0) / (z - 1.0) * (z + m + 1.0) * (z + mt + 1.0) / ((z + m - 1.0) * (z + mt - 1.0));
  return self ? v * (-(z + 1.0) / z) : v;
}

Complex frassek_one_body(Complex z, Complex p, Complex q, bool self) {
  Complex v = -(z / (z + 1.0)) * (z - p + 1.0) * (z - q + 1.0) / ((z + p) * (z + q));
  return self ? v * (-(z + 1.0) / z) : v;
}

}  // namespace

Report frassek_match(const std::vector<Complex>& roots, int L, Complex p_b, Complex q_b, double tol) {
  // fit (m, mt) from affine candidates +-p + c, +-q + c and the k = i convention
  // of each form by one-body factor matching
  Sampler s(12345);
  std::vector<Complex> zs;
  for (int i = 0; i < 40; ++i) zs.push_back(s.gaussian_complex(2.0));
  double best = INFINITY;
  Complex bm = 0.0, bmt = 0.0;
  bool best_fr_self = true, best_ex_self = true;
  for (bool fr_self : {true, false})
    for (bool ex_self : {true, false})
      for (int sg : {1, -1})
        for (int c1 = -2; c1 <= 2; ++c1)
          for (int c2 = -2; c2 <= 2; ++c2) {
            Complex m = static_cast<double>(sg) * p_b + static_cast<double>(c1);
            Complex mt = static_cast<double>(sg) * q_b + static_cast<double>(c2);
            double worst = 0.0;
            for (Complex z : zs) {
              Complex e = explicit_one_body(z, m, mt, ex_self), f = frassek_one_body(z, p_b, q_b, fr_self);
              double sc = std::max(std::abs(e), std::abs(f));
              if (sc > 0.0) worst = std::max(worst, std::abs(e - f) / sc);
            }
            if (worst < best) best = worst, bm = m, bmt = mt, best_fr_self = fr_self, best_ex_self = ex_self;
          }

  EpsProblem ep{1.0, bm, bmt, std::vector<Complex>(L, 0.5), static_cast<int>(roots.size())};
  Report r;
  r.data["dictionary"] = {{"m", {bm.real(), bm.imag()}}, {"m_tilde", {bmt.real(), bmt.imag()}}};
  r.data["boundary_mismatch"] = best;
  r.data["self_term"] = {{"frassek", best_fr_self ? "included" : "excluded"},
                         {"explicit", best_ex_self ? "included" : "excluded"}};
  r.add("boundary factor match", "frassek-reduction", best, tol);
  double fr = INFINITY, ex = INFINITY;
  try {
    fr = max_abs(frassek_residual(roots, L, p_b, q_b, !best_fr_self));
  } catch (const std::runtime_error&) {
  }
  try {
    ex = max_abs(residual_eps(roots, ep, !best_ex_self));
  } catch (const std::runtime_error&) {
  }
  r.add("Frassek residual", "frassek-reduction", fr, tol);
  r.add("explicit eps residual at eps=1, a=1/2", "frassek-reduction", ex, tol);
  return r;
}

Report frassek_match_abstract(const std::vector<Complex>& roots, int L, Complex q_b, double tol) {
  EpsProblem ep{1.0, -1.0, -q_b, std::vector<Complex>(L, -0.5), static_cast<int>(roots.size())};
  Report r;
  double fr = INFINITY, ab = INFINITY;
  try {
    fr = max_abs(frassek_residual(roots, L, -1.0, q_b));
  } catch (const std::runtime_error&) {
  }
  try {
    ab = max_abs(residual_eps_abstract(roots, ep));
  } catch (const std::runtime_error&) {
  }
  r.add("Frassek residual (p=-1)", "frassek-reduction-abstract", fr, tol);
  r.add("abstract eps residual at eps=1, a=-1/2, m=-1", "frassek-reduction-abstract", ab, tol);
  return r;
}

}  // namespace qoper
