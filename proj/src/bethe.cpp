#include "qoper/bethe.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qoper/sampling.hpp"

namespace qoper {

LaurentPoly lambda_poly(const BetheProblemGL2& p) {
  return expand(SymmetricFactoredPoly{p.gamma, 1, p.inhomogeneities}, p.q);
}

TwistProfile twist_profile(const BetheProblemGL2& p) { return build_gl2(p.twist, p.q); }

double ClearedEq::relative() const {
  double s = std::max(std::abs(lhs), std::abs(rhs));
  if (s == 0.0) return INFINITY;  // 0 = 0 carries no information
  return std::abs(lhs - rhs) / s;
}

namespace {

using Fn = std::function<Complex(Complex)>;

// -xi1(s) Q(qs) L(s/q) = xi2(s/q) Q(s/q) L(s), denominators of xi cleared
std::vector<ClearedEq> cleared_gl2_impl(const std::vector<Complex>& roots, const Fn& Q, const Fn& L,
                                        const RationalFn& xi1, const RationalFn& xi2, Complex q) {
  std::vector<ClearedEq> out;
  for (Complex s : roots) {
    if (s == Complex(0.0)) throw DomainError("zero Bethe root");
    Complex sq = s / q;
    Complex lhs = -eval(xi1.num, s) * eval(xi2.den, sq) * Q(q * s) * L(sq);
    Complex rhs = eval(xi1.den, s) * eval(xi2.num, sq) * Q(sq) * L(s);
    out.push_back({lhs, rhs});
  }
  return out;
}

Complex sym_product(const std::vector<Complex>& roots, Complex q, int level, Complex z) {
  Complex w = 1.0 / (ipow(q, level) * z);
  Complex v = 1.0;
  for (Complex s : roots) v *= (z - s) * (w - s);
  return v;
}

}  // namespace

std::vector<Complex> residual_gl2_general(const std::vector<Complex>& roots, const LaurentPoly& Qp,
                                          const LaurentPoly& Lambda, const RationalFn& xi1, const RationalFn& xi2,
                                          Complex q) {
  std::vector<Complex> out;
  const double qscale = std::max(Qp.norm_inf(), 1e-300);
  for (Complex s : roots) {
    Complex up = eval(Qp, q * s), dn = eval(Qp, s / q);
    if (std::abs(up) < 1e-14 * qscale && std::abs(dn) < 1e-14 * qscale)
      throw DegenerateError("Q+(qs) and Q+(s/q) both vanish");
    Complex v = -rational_eval(xi1, s) / rational_eval(xi2, s / q);
    v *= up / dn;
    v *= eval(Lambda, s / q) / eval(Lambda, s);
    out.push_back(v - 1.0);
  }
  return out;
}

std::vector<ClearedEq> cleared_gl2_general(const std::vector<Complex>& roots, const LaurentPoly& Qp,
                                           const LaurentPoly& Lambda, const RationalFn& xi1, const RationalFn& xi2,
                                           Complex q) {
  return cleared_gl2_impl(
      roots, [&](Complex z) { return eval(Qp, z); }, [&](Complex z) { return eval(Lambda, z); }, xi1, xi2, q);
}

std::vector<ClearedEq> cleared_gl2(const std::vector<Complex>& roots, const BetheProblemGL2& p) {
  TwistProfile Z = twist_profile(p);
  const Complex q = p.q;
  return cleared_gl2_impl(
      roots, [&](Complex z) { return sym_product(roots, q, 0, z); },
      [&](Complex z) { return p.gamma * sym_product(p.inhomogeneities, q, 1, z); }, Z.xi[0], Z.xi[1], q);
}

std::vector<Complex> residual_gl2(const std::vector<Complex>& roots, const BetheProblemGL2& p) {
  TwistProfile Z = twist_profile(p);
  return residual_gl2_general(roots, expand(SymmetricFactoredPoly{1.0, 0, roots}, p.q), lambda_poly(p), Z.xi[0],
                              Z.xi[1], p.q);
}

namespace {

// common magnon and site products of the explicit GL(2) forms
Complex gl2_products(const std::vector<Complex>& roots, size_t i, const BetheProblemGL2& p, bool exclude_self) {
  const Complex q = p.q, s = roots[i];
  Complex v = 1.0;
  for (size_t j = 0; j < roots.size(); ++j) {
    if (exclude_self && j == i) continue;
    Complex t = roots[j];
    v *= (q * s - t) * (q * s * t - 1.0) / ((s - q * t) * (s * t - q));
  }
  for (Complex a : p.inhomogeneities) v *= (a * s - 1.0) * (a * q - s) / ((a - s) * (a * q * s - 1.0));
  return v;
}

Complex gl2_prefactor(Complex s, const BetheProblemGL2& p) {
  const Complex q = p.q, mu = p.twist.mu, mt = p.twist.mu_tilde;
  return (s * s - q) / (q * s * s - 1.0) * (s - mu) * (s - mt) / ((mu * s - 1.0) * (mt * s - 1.0));
}

}  // namespace

std::vector<Complex> residual_gl2_diag(const std::vector<Complex>& roots, const BetheProblemGL2& p,
                                       bool exclude_self_term) {
  if (p.twist.kind != GL2Kind::ConstantAsymptotics) throw DomainError("diag form needs constant-asymptotics twist");
  std::vector<Complex> out;
  for (size_t i = 0; i < roots.size(); ++i)
    out.push_back(gl2_prefactor(roots[i], p) * gl2_products(roots, i, p, exclude_self_term) + 1.0);
  return out;
}

std::vector<Complex> residual_gl2_full(const std::vector<Complex>& roots, const BetheProblemGL2& p,
                                       bool exclude_self_term) {
  if (p.twist.kind != GL2Kind::SimplePoleAtZero || !p.twist.b || !p.twist.b_tilde)
    throw DomainError("full form needs simple-pole twist with b, b_tilde");
  const Complex b = *p.twist.b, bt = *p.twist.b_tilde;
  std::vector<Complex> out;
  for (size_t i = 0; i < roots.size(); ++i) {
    Complex s = roots[i];
    Complex boundary = (s + b) * (s + bt) / ((b * s + 1.0) * (bt * s + 1.0));
    out.push_back(gl2_prefactor(s, p) * boundary * gl2_products(roots, i, p, exclude_self_term) + 1.0);
  }
  return out;
}

Complex glN_Q(const LevelRoots& roots, const BetheProblemGLN& p, int k, Complex z) {
  if (k == 0) return 1.0;
  if (k == p.N) return p.Lambda.scale * sym_product(p.Lambda.roots, p.q, p.Lambda.level, z);
  return sym_product(roots.at(k - 1), p.q, k - 1 + p.symmetric_level_offset, z);
}

LaurentPoly glN_Q_poly(const LevelRoots& roots, const BetheProblemGLN& p, int k) {
  if (k == 0) return LaurentPoly::constant(1.0);
  if (k == p.N) return expand(p.Lambda, p.q);
  return expand(SymmetricFactoredPoly{1.0, k - 1 + p.symmetric_level_offset, roots.at(k - 1)}, p.q);
}

namespace {

void check_glN_shape(const LevelRoots& roots, const BetheProblemGLN& p) {
  if (p.N < 2 || p.Z.N() != p.N) throw DomainError("GL(N) problem needs N >= 2 twist components");
  if (static_cast<int>(roots.size()) != p.N - 1) throw DomainError("GL(N) roots need N-1 levels");
}

}  // namespace

std::vector<ClearedEq> cleared_glN(const LevelRoots& roots, const BetheProblemGLN& p) {
  check_glN_shape(roots, p);
  const int N = p.N;
  const Complex q = p.q;
  std::vector<ClearedEq> out;
  for (int k = 1; k <= N - 1; ++k) {
    const RationalFn& xa = p.Z.xi[N - k];      // xi_{N-k+1}
    const RationalFn& xb = p.Z.xi[N - k - 1];  // xi_{N-k}
    for (Complex s : roots[k - 1]) {
      if (s == Complex(0.0)) throw DomainError("zero Bethe root");
      Complex za = ipow(q, k - 2) * s, zb = ipow(q, k - 1) * s;
      Complex num = glN_Q(roots, p, k - 1, q * s) * glN_Q(roots, p, k, s / q) * glN_Q(roots, p, k + 1, s);
      Complex den = glN_Q(roots, p, k - 1, s) * glN_Q(roots, p, k, q * s) * glN_Q(roots, p, k + 1, s / q);
      Complex lhs = -eval(xa.num, za) * eval(xb.den, zb) * num;
      Complex rhs = eval(xa.den, za) * eval(xb.num, zb) * den;
      out.push_back({lhs, rhs});
    }
  }
  return out;
}

std::vector<Complex> residual_glN(const LevelRoots& roots, const BetheProblemGLN& p) {
  check_glN_shape(roots, p);
  const int N = p.N;
  const Complex q = p.q;
  std::vector<Complex> out;
  for (int k = 1; k <= N - 1; ++k) {
    for (Complex s : roots[k - 1]) {
      Complex up = glN_Q(roots, p, k, q * s), dn = glN_Q(roots, p, k, s / q);
      if (up == Complex(0.0) && dn == Complex(0.0)) throw DegenerateError("Q_k(qs) and Q_k(s/q) both vanish");
      Complex ratio = p.Z(N - k + 1, ipow(q, k - 2) * s) / p.Z(N - k, ipow(q, k - 1) * s);
      Complex num = glN_Q(roots, p, k - 1, q * s) * dn * glN_Q(roots, p, k + 1, s);
      Complex den = glN_Q(roots, p, k - 1, s) * up * glN_Q(roots, p, k + 1, s / q);
      out.push_back(-1.0 - ratio * num / den);
    }
  }
  return out;
}

std::vector<Complex> residual_glN_explicit(const LevelRoots& roots, const BetheProblemGLN& p,
                                           bool exclude_self_term) {
  check_glN_shape(roots, p);
  if (p.symmetric_level_offset != 0) throw DomainError("explicit form is stated for symmetric_level_offset = 0");
  if (p.Lambda.level != p.N - 1) throw DomainError("explicit form needs Lambda at level N-1");
  const int N = p.N;
  const Complex q = p.q;
  auto level = [&](int k) -> const std::vector<Complex>& {
    static const std::vector<Complex> none;
    if (k == 0) return none;
    if (k == N) return p.Lambda.roots;
    return roots[k - 1];
  };
  auto count = [&](int k) { return k == 0 ? 0 : static_cast<int>(level(k).size()); };
  std::vector<Complex> out;
  for (int k = 1; k <= N - 1; ++k) {
    const auto& own = level(k);
    for (size_t i = 0; i < own.size(); ++i) {
      Complex s = own[i];
      Complex ratio = p.Z(N - k + 1, ipow(q, k - 2) * s) / p.Z(N - k, ipow(q, k - 1) * s);
      Complex lhs = -ratio * ipow(q, count(k));
      for (size_t j = 0; j < own.size(); ++j) {
        if (exclude_self_term && j == i) continue;
        Complex t = own[j];
        lhs *= (ipow(q, k - 2) * s * t - 1.0) * (s - q * t) / ((ipow(q, k) * s * t - 1.0) * (q * s - t));
      }
      Complex rhs = ipow(q, count(k - 1));
      for (Complex t : level(k - 1))
        rhs *= (ipow(q, k - 2) * s * t - 1.0) * (s - t) / ((ipow(q, k - 1) * s * t - 1.0) * (q * s - t));
      for (Complex t : level(k + 1))
        rhs *= (ipow(q, k - 1) * s * t - 1.0) * (s - q * t) / ((ipow(q, k) * s * t - 1.0) * (s - t));
      out.push_back(lhs / rhs - 1.0);
    }
  }
  return out;
}

NewtonResult damped_newton(const ClearedSystem& F, std::vector<Complex> x0, double tol, int max_iter) {
  NewtonResult res;
  res.x = std::move(x0);
  const int n = static_cast<int>(res.x.size());
  auto evaluate = [&](const std::vector<Complex>& x, std::vector<ClearedEq>& eqs) {
    for (Complex v : x)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1e8 || std::abs(v) < 1e-8)
        return false;
    try {
      eqs = F(x);
    } catch (const PoleError&) {
      return false;
    } catch (const DomainError&) {
      return false;
    }
    return true;
  };
  auto max_rel = [](const std::vector<ClearedEq>& eqs) {
    double m = 0.0;
    for (const auto& e : eqs) m = std::max(m, e.relative());
    return m;
  };
  if (n == 0) {
    res.residual = 0.0;
    res.converged = true;
    return res;
  }

  std::vector<ClearedEq> eqs;
  for (res.iterations = 0; res.iterations <= max_iter; ++res.iterations) {
    if (!evaluate(res.x, eqs)) return res;
    res.residual = max_rel(eqs);
    if (res.residual <= tol) {
      res.converged = true;
      return res;
    }
    if (res.iterations == max_iter) return res;

    Eigen::VectorXd w(n);
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i) {
      double s = std::max(std::abs(eqs[i].lhs), std::abs(eqs[i].rhs));
      w(i) = s > 0.0 ? s : 1.0;
      f(i) = (eqs[i].lhs - eqs[i].rhs) / w(i);
    }
    Eigen::MatrixXcd J(n, n);
    for (int j = 0; j < n; ++j) {
      double h = 1e-7 * std::max(1.0, std::abs(res.x[j]));
      std::vector<Complex> xp = res.x, xm = res.x;
      xp[j] += h;
      xm[j] -= h;
      std::vector<ClearedEq> ep, em;
      if (!evaluate(xp, ep) || !evaluate(xm, em)) return res;
      for (int i = 0; i < n; ++i)
        J(i, j) = ((ep[i].lhs - ep[i].rhs) - (em[i].lhs - em[i].rhs)) / (2.0 * h * w(i));
    }
    Eigen::VectorXcd d = J.fullPivLu().solve(-f);
    if (!d.allFinite()) return res;

    const double merit0 = f.squaredNorm();
    double t = 1.0;
    bool accepted = false;
    std::vector<Complex> xt(n);
    for (int halving = 0; halving <= 30; ++halving, t *= 0.5) {
      for (int i = 0; i < n; ++i) xt[i] = res.x[i] + t * d(i);
      std::vector<ClearedEq> et;
      if (!evaluate(xt, et)) continue;
      double merit = 0.0;
      for (int i = 0; i < n; ++i) merit += std::norm((et[i].lhs - et[i].rhs) / w(i));
      if (merit < merit0) {
        accepted = true;
        break;
      }
    }
    if (!accepted) return res;
    res.x = xt;
  }
  return res;
}

Complex canonical_root(Complex t, Complex q, int level) {
  Complex p = 1.0 / (ipow(q, level) * t);
  double at = std::abs(t), ap = std::abs(p);
  if (std::abs(at - ap) > 1e-9 * std::max(at, ap)) return at > ap ? t : p;
  // equal modulus: prefer larger real part, then larger imaginary part
  if (std::abs(t.real() - p.real()) > 1e-9 * at) return t.real() > p.real() ? t : p;
  return t.imag() >= p.imag() ? t : p;
}

LevelRoots canonicalize(const LevelRoots& roots, Complex q, const std::vector<int>& levels) {
  LevelRoots out = roots;
  for (size_t k = 0; k < out.size(); ++k) {
    for (auto& t : out[k]) t = canonical_root(t, q, levels.at(k));
    std::sort(out[k].begin(), out[k].end(), [](Complex a, Complex b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
  }
  return out;
}

bool same_solution(const LevelRoots& a, const LevelRoots& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].size() != b[k].size()) return false;
    std::vector<bool> used(b[k].size(), false);
    for (Complex x : a[k]) {
      bool found = false;
      for (size_t j = 0; j < b[k].size() && !found; ++j) {
        if (used[j]) continue;
        if (std::abs(x - b[k][j]) <= tol * std::max(1.0, std::abs(x))) used[j] = found = true;
      }
      if (!found) return false;
    }
  }
  return true;
}

std::vector<Complex> start_vector(int count, const std::vector<Complex>& anchors, Complex q, std::uint64_t seed,
                                  int start_index) {
  Sampler s(seed * 1000003ULL + static_cast<std::uint64_t>(start_index) * 7919ULL + 17ULL);
  const Complex sq = std::sqrt(q);
  std::vector<Complex> x;
  for (int i = 0; i < count; ++i) {
    double mode = s.uniform();
    Complex v;
    if (mode < 0.4 && !anchors.empty()) {
      int a = std::min(static_cast<int>(s.uniform() * anchors.size()), static_cast<int>(anchors.size()) - 1);
      v = anchors[a] * (s.uniform() < 0.5 ? sq : 1.0 / sq) * (1.0 + 0.15 * s.gaussian_complex());
    } else if (mode < 0.7) {
      v = s.unit_circle() * (1.0 + 0.05 * s.gaussian_complex());
    } else {
      // wide log-uniform range: reflection partners of far roots sit near 0
      v = s.annulus(0.02, 50.0);
    }
    x.push_back(v);
  }
  return x;
}

namespace {

LevelRoots split(const std::vector<Complex>& x, const std::vector<int>& sizes) {
  LevelRoots out;
  size_t pos = 0;
  for (int n : sizes) {
    out.emplace_back(x.begin() + pos, x.begin() + pos + n);
    pos += n;
  }
  return out;
}

std::vector<Complex> flatten(const LevelRoots& r) {
  std::vector<Complex> x;
  for (const auto& l : r) x.insert(x.end(), l.begin(), l.end());
  return x;
}

}  // namespace

SolveOutcome multi_start_solve(const MultiStartSpec& spec, const SolveOptions& opt) {
  SolveOutcome out;
  int total = 0;
  for (int n : spec.sizes) total += n;
  auto canon = [&](const LevelRoots& r) {
    return spec.canonical ? spec.canonical(r) : canonicalize(r, spec.q, spec.levels);
  };

  std::vector<LevelRoots> rejected;
  auto consider = [&](const NewtonResult& nr) {
    ++out.converged;
    LevelRoots roots = canon(split(nr.x, spec.sizes));
    for (const auto& s : out.solutions)
      if (same_solution(s.roots, roots)) {
        ++out.duplicates;
        return;
      }
    for (const auto& r : rejected)
      if (same_solution(r, roots)) {
        ++out.duplicates;
        return;
      }
    // polish in canonical orientation so stored roots satisfy the stored equations
    NewtonResult pol = damped_newton(spec.system, flatten(roots), opt.tol, 20);
    if (!pol.converged) {
      rejected.push_back(roots);
      out.notes.push_back("candidate lost convergence after canonical reorientation");
      return;
    }
    roots = canon(split(pol.x, spec.sizes));
    if (spec.rational_residual) {
      double rr = INFINITY;
      try {
        rr = spec.rational_residual(roots);
      } catch (const std::runtime_error&) {
      }
      if (!(rr <= 1e-8)) {
        ++out.rejected_spurious;
        rejected.push_back(roots);
        out.notes.push_back("discarded root of the cleared system that fails the rational form");
        return;
      }
    }
    BetheSolution sol;
    sol.roots = roots;
    sol.residual_norm = pol.residual;
    sol.iterations = nr.iterations + pol.iterations;
    sol.nondegeneracy = spec.nondegeneracy ? spec.nondegeneracy(roots) : Report{};
    if (!sol.nondegeneracy.all_pass()) {
      ++out.rejected_degenerate;
      rejected.push_back(roots);
      out.notes.push_back("discarded degenerate solution");
      return;
    }
    sol.certificate = spec.certify ? spec.certify(roots) : Report{};
    if (spec.certificate_gates && !sol.certificate.all_pass()) {
      ++out.rejected_certificate;
      rejected.push_back(roots);
      out.notes.push_back("discarded solution failing the QQ certificate");
      return;
    }
    out.solutions.push_back(std::move(sol));
  };

  if (total == 0) {
    NewtonResult nr;
    nr.converged = true;
    nr.residual = 0.0;
    out.starts = 1;
    consider(nr);
    return out;
  }
  for (int st = 0; st < opt.starts; ++st) {
    ++out.starts;
    auto x0 = start_vector(total, spec.anchors, spec.q, opt.seed, st);
    NewtonResult nr = damped_newton(spec.system, x0, opt.tol, opt.max_iter);
    if (nr.converged) consider(nr);
  }
  return out;
}

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (Complex x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<Complex> twist_zeros_gl2(const BetheProblemGL2& p) {
  std::vector<Complex> z{p.twist.mu, p.twist.mu_tilde};
  if (p.twist.kind == GL2Kind::SimplePoleAtZero) {
    if (p.twist.b) z.push_back(-*p.twist.b);
    if (p.twist.b_tilde) z.push_back(-*p.twist.b_tilde);
  }
  return z;
}

}  // namespace

Report gl2_nondegeneracy(const std::vector<Complex>& roots, const BetheProblemGL2& p, int depth) {
  return nondegeneracy_check({{"bethe roots", roots, false},
                              {"inhomogeneities", p.inhomogeneities, true},
                              {"twist zeros", twist_zeros_gl2(p), true}},
                             p.q, depth);
}

Report gl2_certificate(const std::vector<Complex>& roots, const BetheProblemGL2& p, double tol, std::uint64_t seed) {
  Report r;
  TwistProfile Z = twist_profile(p);
  LaurentPoly Qp = expand(SymmetricFactoredPoly{1.0, 0, roots}, p.q);
  LaurentPoly L = lambda_poly(p);
  try {
    QminusFit fit = recover_Qminus(p.q, Qp, Z.xi[0], Z.xi[1], L, default_degree_bound(Qp, L), seed);
    r.add("Q- recovery certificate", "gl2-qq-certificate", std::max(fit.fit_residual, fit.fresh_residual), tol);
    r.data["fit_residual"] = fit.fit_residual;
    r.data["fresh_residual"] = fit.fresh_residual;
    r.data["condition"] = fit.condition;
  } catch (const RankError& e) {
    r.add_flag("Q- recovery certificate", "gl2-qq-certificate", false);
    r.notes.push_back(e.what());
  }
  return r;
}

Report glN_nondegeneracy(const LevelRoots& roots, const BetheProblemGLN& p, int depth) {
  std::vector<RootFamily> fams;
  for (size_t k = 0; k < roots.size(); ++k) fams.push_back({"level " + std::to_string(k + 1), roots[k], false});
  fams.push_back({"inhomogeneities", p.Lambda.roots, true});
  std::vector<Complex> zeros;
  for (const auto& xi : p.Z.xi)
    for (Complex z : laurent_roots(xi.num)) zeros.push_back(z);
  fams.push_back({"twist zeros", zeros, true});
  return nondegeneracy_check(fams, p.q, depth);
}

Report glN_certificate(const LevelRoots& roots, const BetheProblemGLN& p, double tol, std::uint64_t seed) {
  Report r;
  const int N = p.N;
  const Complex q = p.q;
  for (int k = 1; k <= N - 1; ++k) {
    LaurentPoly Qk = glN_Q_poly(roots, p, k);
    LaurentPoly rhs = q_shift(glN_Q_poly(roots, p, k - 1), q, 1) * glN_Q_poly(roots, p, k + 1);
    RationalFn xb = q_shift(p.Z.xi[N - k], q, k - 1);
    RationalFn xa = q_shift(p.Z.xi[N - k - 1], q, k - 1);
    std::string name = "Q- recovery certificate, k=" + std::to_string(k);
    try {
      QminusFit fit = recover_Qminus(q, Qk, xa, xb, rhs, default_degree_bound(Qk, rhs), seed + k);
      r.add(name, "glN-qq-certificate", std::max(fit.fit_residual, fit.fresh_residual), tol);
      r.data["levels"].push_back(
          {{"k", k}, {"fit_residual", fit.fit_residual}, {"fresh_residual", fit.fresh_residual}});
    } catch (const RankError& e) {
      r.add_flag(name, "glN-qq-certificate", false);
      r.notes.push_back(e.what());
    }
  }
  return r;
}

SolveOutcome solve_gl2(const BetheProblemGL2& p, const SolveOptions& opt) {
  if (p.magnons < 0) throw DomainError("magnons must be nonnegative");
  MultiStartSpec spec;
  spec.system = [&](const std::vector<Complex>& x) { return cleared_gl2(x, p); };
  spec.sizes = {p.magnons};
  spec.levels = {0};
  spec.anchors = p.inhomogeneities.empty() ? std::vector<Complex>{p.twist.mu, p.twist.mu_tilde} : p.inhomogeneities;
  spec.q = p.q;
  spec.nondegeneracy = [&](const LevelRoots& r) { return gl2_nondegeneracy(r[0], p, opt.lattice_depth); };
  spec.rational_residual = [&](const LevelRoots& r) { return max_abs(residual_gl2(r[0], p)); };
  spec.certify = [&](const LevelRoots& r) { return gl2_certificate(r[0], p, opt.certificate_tol, opt.seed); };
  // the simple-pole family admits no Laurent Q-, so its certificate is informational
  spec.certificate_gates = p.twist.kind == GL2Kind::ConstantAsymptotics;
  SolveOutcome out = multi_start_solve(spec, opt);
  if (!spec.certificate_gates) out.notes.push_back("simple-pole twist: QQ certificate recorded, not gated");
  return out;
}

SolveOutcome solve_glN(const BetheProblemGLN& p, const SolveOptions& opt) {
  if (static_cast<int>(p.magnons.size()) != p.N - 1) throw DomainError("magnons needs N-1 entries");
  MultiStartSpec spec;
  spec.sizes = p.magnons;
  for (int k = 1; k <= p.N - 1; ++k) spec.levels.push_back(k - 1 + p.symmetric_level_offset);
  spec.system = [&](const std::vector<Complex>& x) { return cleared_glN(split(x, p.magnons), p); };
  spec.anchors = p.Lambda.roots;
  spec.q = p.q;
  spec.nondegeneracy = [&](const LevelRoots& r) { return glN_nondegeneracy(r, p, opt.lattice_depth); };
  spec.rational_residual = [&](const LevelRoots& r) { return max_abs(residual_glN(r, p)); };
  spec.certify = [&](const LevelRoots& r) { return glN_certificate(r, p, opt.certificate_tol, opt.seed); };
  spec.certificate_gates = opt.gate_certificate;
  auto out = multi_start_solve(spec, opt);
  if (!opt.gate_certificate) out.notes.push_back("QQ certificate recorded, not gated");
  return out;
}

LaurentPoly scale_argument(const LaurentPoly& p, Complex c) {
  std::map<int, Complex> t;
  for (const auto& [n, v] : p.terms()) t[n] = v * ipow(c, n);
  return LaurentPoly(t);
}

std::vector<Complex> laurent_roots(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("roots of the zero polynomial");
  const int lo = p.min_exp(), d = p.max_exp() - lo;
  if (d == 0) return {};
  const Complex lead = p.coeff(p.max_exp());
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) C(i, d - 1) = -p.coeff(lo + i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<Complex> out;
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

LaurentPoly cleared_univariate_gl2(const BetheProblemGL2& p) {
  if (p.magnons != 1) throw DomainError("univariate oracle needs exactly one magnon");
  const Complex q = p.q;
  TwistProfile Z = twist_profile(p);
  LaurentPoly L = lambda_poly(p);
  // Q+(qs) and Q+(s/q) as Laurent polynomials in the single root s
  LaurentPoly Qup = LaurentPoly({{1, q - 1.0}}) * LaurentPoly({{-1, 1.0 / q}, {1, -1.0}});
  LaurentPoly Qdn = LaurentPoly({{1, 1.0 / q - 1.0}}) * LaurentPoly({{-1, q}, {1, -1.0}});
  LaurentPoly lhs = scale(Z.xi[0].num * scale_argument(Z.xi[1].den, 1.0 / q) * Qup * scale_argument(L, 1.0 / q), -1.0);
  LaurentPoly rhs = Z.xi[0].den * scale_argument(Z.xi[1].num, 1.0 / q) * Qdn * L;
  LaurentPoly P = lhs - rhs;
  if (P.is_zero() || P.norm_inf() <= 1e-13 * std::max(lhs.norm_inf(), rhs.norm_inf()))
    throw DegenerateProblem("cleared univariate polynomial vanishes identically");
  return P;
}

std::vector<Complex> brute_force_univariate(const BetheProblemGL2& p, double filter_tol) {
  LaurentPoly P = cleared_univariate_gl2(p);
  // derivative for polishing
  std::map<int, Complex> dt;
  for (const auto& [n, c] : P.terms())
    if (n != 0) dt[n - 1] = c * static_cast<double>(n);
  LaurentPoly dP(dt);
  std::vector<Complex> out;
  for (Complex s : laurent_roots(P)) {
    if (std::abs(s) < 1e-12) continue;
    for (int it = 0; it < 3; ++it) {
      Complex d = eval(dP, s);
      if (d == Complex(0.0)) break;
      Complex next = s - eval(P, s) / d;
      if (std::abs(eval(P, next)) < std::abs(eval(P, s))) s = next;
    }
    try {
      auto r = residual_gl2({s}, p);
      if (std::abs(r[0]) < filter_tol) out.push_back(s);
    } catch (const std::runtime_error&) {
    }
  }
  return out;
}

namespace {

Report verify_common(const std::vector<ClearedEq>& eqs, double tol) {
  double m = 0.0;
  for (const auto& e : eqs) m = std::max(m, e.relative());
  Report r;
  r.add("cleared Bethe residual", "bethe-equations", m, tol);
  return r;
}

}  // namespace

Report verify_solution(const BetheProblemGL2& p, const BetheSolution& s, const SolveOptions& opt) {
  Report r;
  const auto& roots = s.roots.empty() ? std::vector<Complex>{} : s.roots[0];
  if (static_cast<int>(roots.size()) != p.magnons) {
    r.add_flag("root count matches magnons", "bethe-equations", false);
    return r;
  }
  try {
    r.merge(verify_common(cleared_gl2(roots, p), 10 * opt.tol));
  } catch (const std::runtime_error& e) {
    r.add_flag("cleared Bethe residual", "bethe-equations", false);
    r.notes.push_back(e.what());
  }
  r.merge(gl2_nondegeneracy(roots, p, opt.lattice_depth));
  Report cert = gl2_certificate(roots, p, opt.certificate_tol, opt.seed);
  if (p.twist.kind == GL2Kind::ConstantAsymptotics) {
    r.merge(cert);
  } else {
    r.data["certificate"] = to_json(cert);
    r.notes.push_back("simple-pole twist: QQ certificate recorded, not gated");
  }
  return r;
}

Report verify_solution(const BetheProblemGLN& p, const BetheSolution& s, const SolveOptions& opt) {
  Report r;
  bool shape = static_cast<int>(s.roots.size()) == p.N - 1;
  for (size_t k = 0; shape && k < s.roots.size(); ++k)
    shape = static_cast<int>(s.roots[k].size()) == p.magnons.at(k);
  if (!shape) {
    r.add_flag("root counts match magnons", "bethe-equations", false);
    return r;
  }
  try {
    r.merge(verify_common(cleared_glN(s.roots, p), 10 * opt.tol));
  } catch (const std::runtime_error& e) {
    r.add_flag("cleared Bethe residual", "bethe-equations", false);
    r.notes.push_back(e.what());
  }
  r.merge(glN_nondegeneracy(s.roots, p, opt.lattice_depth));
  r.merge(glN_certificate(s.roots, p, opt.certificate_tol, opt.seed));
  return r;
}

}  // namespace qoper
