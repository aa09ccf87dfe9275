#include "qoper/literature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qoper/sampling.hpp"

namespace qoper {

namespace {

LaurentPoly lin(Complex c1, Complex c0) { return LaurentPoly({{1, c1}, {0, c0}}); }

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (Complex x : v) m = std::max(m, std::abs(x));
  return m;
}

void require_levels(const SubstitutionDeVega& sub, const DeVegaParams& params, const std::vector<int>& p) {
  const int N = params.n_rank;
  if (static_cast<int>(p.size()) != N - 1) throw DomainError("magnon counts must list levels 1..N-1");
  if (static_cast<int>(sub.mu_roots.size()) != N) throw DomainError("rapidities must list levels 1..N");
  for (int k = 1; k < N; ++k)
    if (static_cast<int>(sub.mu_roots[k - 1].size()) != p[k - 1])
      throw DomainError("level " + std::to_string(k) + " has the wrong number of rapidities");
}

// level sizes with p_0 = 0 and p_N = #level-N roots
std::vector<int> level_sizes(const SubstitutionDeVega& sub, int N) {
  std::vector<int> sizes(N + 1, 0);
  for (int k = 1; k <= N; ++k) sizes[k] = static_cast<int>(sub.mu_roots[k - 1].size());
  return sizes;
}

DeVegaParams with_boundary(const DeVegaParams& params, Complex b_minus, Complex b_plus) {
  DeVegaParams out = params;
  out.b_minus = b_minus;
  out.b_plus = b_plus;
  return out;
}

}  // namespace

// ---- De Vega boundary functions ----

RationalFn devega_h(int k, const DeVegaParams& params, Complex q) {
  const int N = params.n_rank;
  const int lm = params.l_minus, lp = params.l_plus;
  const Complex bm = params.b_minus, bp = params.b_plus;
  if (lm == lp) {
    if (k != lm) return RationalFn();
    // q^l (b_- - z)(b_+ z - q^{N-l}) / ((q^l b_- z - 1)(b_+ - q^N z))
    return RationalFn(ipow(q, lm) * (lin(-1.0, bm) * lin(bp, -ipow(q, N - lm))),
                      lin(ipow(q, lm) * bm, -1.0) * lin(-ipow(q, N), bp));
  }
  if (k == lm) {
    // q^l z (b_- - z) / (q^l b_- z - 1)
    return RationalFn(ipow(q, lm) * (LaurentPoly::monomial(1) * lin(-1.0, bm)), lin(ipow(q, lm) * bm, -1.0));
  }
  if (k == lp) {
    // (b_+ z - q^{N-l}) / (z (b_+ - q^N z))
    return RationalFn(lin(bp, -ipow(q, N - lp)), LaurentPoly::monomial(1) * lin(-ipow(q, N), bp));
  }
  return RationalFn();
}

Complex h_k(int k, Complex z, const DeVegaParams& params, Complex q, int N) {
  DeVegaParams p = params;
  p.n_rank = N;
  return rational_eval(devega_h(k, p, q), z);
}

Complex h_k_sinh(int k, Complex mu, int N, int l_minus, int l_plus, Complex gamma, Complex xi_minus,
                 Complex xi_plus) {
  using std::sinh;
  auto minus_part = [&] { return sinh(xi_minus - mu) / sinh(xi_minus + mu + double(l_minus) * gamma); };
  auto plus_part = [&] {
    return sinh(xi_plus + mu - double(N - l_plus) * gamma) / sinh(xi_plus - mu - double(N) * gamma);
  };
  if (l_minus == l_plus) return k == l_minus ? minus_part() * plus_part() : Complex(1.0);
  if (k == l_minus) return minus_part() * std::exp(2.0 * mu + double(l_minus) * gamma);
  if (k == l_plus) return plus_part() * std::exp(-2.0 * mu - double(l_plus) * gamma);
  return 1.0;
}

// ---- Vlaar-Weston dictionary ----

GL2Data vw_map(const SubstitutionVW& sub, VWDictionary dict) {
  if (sub.q_vw == Complex(0.0)) throw DomainError("q_vw = 0");
  const Complex sq = 1.0 / sub.q_vw;
  GL2Data d;
  d.q = sq * sq;
  for (Complex y : sub.y) d.roots.push_back(y * y / sq);
  for (Complex t : sub.t) d.inhomogeneities.push_back(dict == VWDictionary::Printed ? t * t : t * t / sq);
  d.twist.kind = GL2Kind::ConstantAsymptotics;
  if (dict == VWDictionary::Printed) {
    d.twist.mu = sub.xi_b / sq;
    d.twist.mu_tilde = sub.xi_tilde_b / sq;
  } else {
    d.twist.mu = 1.0 / (sq * sub.xi_b);
    d.twist.mu_tilde = 1.0 / (sq * sub.xi_tilde_b);
  }
  return d;
}

SubstitutionVW vw_inverse(const GL2Data& data, VWDictionary dict) {
  if (data.q == Complex(0.0)) throw DomainError("q = 0");
  const Complex sq = std::sqrt(data.q);
  SubstitutionVW sub;
  sub.q_vw = 1.0 / sq;
  for (Complex s : data.roots) sub.y.push_back(std::sqrt(s * sq));
  for (Complex a : data.inhomogeneities) sub.t.push_back(dict == VWDictionary::Printed ? std::sqrt(a) : std::sqrt(a * sq));
  if (dict == VWDictionary::Printed) {
    sub.xi_b = data.twist.mu * sq;
    sub.xi_tilde_b = data.twist.mu_tilde * sq;
  } else {
    sub.xi_b = 1.0 / (sq * data.twist.mu);
    sub.xi_tilde_b = 1.0 / (sq * data.twist.mu_tilde);
  }
  return sub;
}

std::vector<Complex> vw_residual(const SubstitutionVW& sub, bool exclude_self_term) {
  const Complex Q = sub.q_vw, Q2 = Q * Q, Qm2 = 1.0 / Q2;
  const Complex xi = sub.xi_b, xit = sub.xi_tilde_b;
  std::vector<Complex> out;
  for (std::size_t i = 0; i < sub.y.size(); ++i) {
    const Complex y2 = sub.y[i] * sub.y[i];
    Complex v = (1.0 - xit * y2) / (xit - Q2 * y2) * (1.0 - xi * y2) / (xi - Q2 * y2) * (1.0 - Q2) *
                (Qm2 - Q2 * y2 * y2) / ((1.0 - Qm2) * (1.0 - y2 * y2));
    for (std::size_t j = 0; j < sub.y.size(); ++j) {
      if (j == i && exclude_self_term) continue;
      const Complex yj2 = sub.y[j] * sub.y[j];
      v *= Q2 * (1.0 - Qm2 * y2 / yj2) * (1.0 - y2 * yj2) / ((1.0 - Q2 * y2 / yj2) * (Qm2 - Q2 * y2 * yj2));
    }
    for (Complex t : sub.t) {
      const Complex t2 = t * t;
      v *= (1.0 - Q2 * y2 * t2) * (1.0 - Q2 * y2 / t2) / (Q2 * (1.0 - y2 * t2) * (1.0 - y2 / t2));
    }
    out.push_back(v - 1.0);
  }
  return out;
}

// ---- Yang-Nepomechie-Zhang dictionary ----

Complex ynz_H2(Complex z, const SubstitutionYNZ& sub) {
  using std::cosh;
  using std::sinh;
  const double e1 = sub.eps_signs[0], e2 = sub.eps_signs[1], e3 = sub.eps_signs[2];
  const Complex eta = sub.eta;
  return -4.0 * e2 * std::pow(sinh(z + eta), 2 * sub.N_sites) * sinh(2.0 * z + 2.0 * eta) / sinh(2.0 * z + eta) *
         sinh(z - sub.alpha_minus) * cosh(z - e1 * sub.beta_minus) * sinh(z - e2 * sub.alpha_plus) *
         cosh(z - e3 * sub.beta_plus);
}

Complex ynz_Q(Complex z, const SubstitutionYNZ& sub) {
  Complex v = 1.0;
  for (Complex vj : sub.v) v *= std::sinh(z - vj) * std::sinh(z + vj + sub.eta);
  return v;
}

namespace {
std::pair<Complex, Complex> ynz_terms(Complex v, const SubstitutionYNZ& sub) {
  const Complex h_den = ynz_H2(-v - sub.eta, sub);
  const Complex q_den = ynz_Q(v - sub.eta, sub);
  if (std::abs(h_den) == 0.0 || std::abs(q_den) == 0.0) throw PoleError("ynz equation evaluated at a pole");
  return {ynz_H2(v, sub) / h_den, ynz_Q(v + sub.eta, sub) / q_den};
}
}  // namespace

std::vector<Complex> ynz_residual(const SubstitutionYNZ& sub) {
  std::vector<Complex> out;
  for (Complex v : sub.v) {
    auto [a, b] = ynz_terms(v, sub);
    out.push_back(a + b);
  }
  return out;
}

std::vector<double> ynz_relative_residual(const SubstitutionYNZ& sub) {
  std::vector<double> out;
  for (Complex v : sub.v) {
    auto [a, b] = ynz_terms(v, sub);
    double s = std::max(std::abs(a), std::abs(b));
    out.push_back(s == 0.0 ? INFINITY : std::abs(a + b) / s);
  }
  return out;
}

BetheProblemGL2 ynz_problem(const SubstitutionYNZ& sub) {
  if (sub.N_sites < 0) throw DomainError("N_sites must be nonnegative");
  const double e1 = sub.eps_signs[0], e2 = sub.eps_signs[1], e3 = sub.eps_signs[2];
  const Complex sq = std::exp(-sub.eta);
  BetheProblemGL2 p;
  p.q = sq * sq;
  p.magnons = static_cast<int>(sub.v.size());
  p.inhomogeneities.assign(sub.N_sites, 1.0 / sq);
  p.twist.kind = GL2Kind::SimplePoleAtZero;
  p.twist.mu = std::exp(2.0 * sub.alpha_minus) / sq;
  p.twist.mu_tilde = std::exp(2.0 * e2 * sub.alpha_plus) / sq;
  p.twist.b = std::exp(2.0 * e1 * sub.beta_minus) / sq;
  p.twist.b_tilde = std::exp(2.0 * e3 * sub.beta_plus) / sq;
  return p;
}

std::vector<Complex> ynz_roots(const SubstitutionYNZ& sub) {
  std::vector<Complex> s;
  for (Complex v : sub.v) s.push_back(std::exp(2.0 * v + sub.eta));
  return s;
}

std::vector<Complex> ynz_inverse_roots(const std::vector<Complex>& s, Complex eta) {
  std::vector<Complex> v;
  for (Complex x : s) {
    if (x == Complex(0.0)) throw DomainError("root 0 has no rapidity");
    v.push_back((std::log(x) - eta) / 2.0);
  }
  return v;
}

// ---- De Vega dictionary ----

DeVegaData devega_map(const SubstitutionDeVega& sub) {
  DeVegaData d;
  d.q = std::exp(2.0 * sub.gamma);
  for (const auto& level : sub.mu_roots) {
    std::vector<Complex> s;
    for (Complex m : level) s.push_back(std::exp(2.0 * m));
    d.s.push_back(s);
  }
  d.b_minus = std::exp(2.0 * sub.xi_minus);
  d.b_plus = std::exp(2.0 * sub.xi_plus);
  return d;
}

SubstitutionDeVega devega_inverse(const DeVegaData& data) {
  auto half_log = [](Complex x) {
    if (x == Complex(0.0)) throw DomainError("zero has no rapidity");
    return std::log(x) / 2.0;
  };
  SubstitutionDeVega sub;
  sub.gamma = half_log(data.q);
  for (const auto& level : data.s) {
    std::vector<Complex> m;
    for (Complex x : level) m.push_back(half_log(x));
    sub.mu_roots.push_back(m);
  }
  sub.xi_minus = half_log(data.b_minus);
  sub.xi_plus = half_log(data.b_plus);
  return sub;
}

std::vector<Complex> devega_residual(const SubstitutionDeVega& sub, const DeVegaParams& params,
                                     const std::vector<int>& p, bool exclude_self_term) {
  require_levels(sub, params, p);
  const int N = params.n_rank;
  const DeVegaData d = devega_map(sub);
  const Complex q = d.q;
  const DeVegaParams hp = with_boundary(params, d.b_minus, d.b_plus);
  const std::vector<int> sizes = level_sizes(sub, N);
  auto level = [&](int k) -> const std::vector<Complex>& {
    static const std::vector<Complex> empty;
    return k >= 1 && k <= N ? d.s[k - 1] : empty;
  };

  std::vector<Complex> out;
  for (int k = 1; k < N; ++k) {
    const auto& S = level(k);
    const Complex qk1 = ipow(q, k - 1), qk = ipow(q, k), qk2 = ipow(q, k + 1);
    for (std::size_t i = 0; i < S.size(); ++i) {
      const Complex s = S[i];
      Complex L = -ipow(q, sizes[k] - 1) * h_k(k, s, hp, q, N) * (qk2 * s * s - 1.0) / (qk1 * s * s - 1.0);
      for (std::size_t j = 0; j < S.size(); ++j) {
        if (j == i && exclude_self_term) continue;
        const Complex t = S[j];
        L *= (qk1 * s * t - 1.0) * (s - q * t) / ((qk2 * s * t - 1.0) * (q * s - t));
      }
      Complex R = ipow(q, sizes[k - 1]);
      for (Complex t : level(k + 1)) R *= (qk * s * t - 1.0) * (s - q * t) / ((qk2 * s * t - 1.0) * (s - t));
      for (Complex t : level(k - 1)) R *= (qk1 * s * t - 1.0) * (s - t) / ((qk * s * t - 1.0) * (q * s - t));
      out.push_back(L / R - 1.0);
    }
  }
  return out;
}

std::vector<Complex> devega_residual_sinh(const SubstitutionDeVega& sub, const DeVegaParams& params,
                                          const std::vector<int>& p) {
  require_levels(sub, params, p);
  using std::sinh;
  const int N = params.n_rank;
  const Complex g = sub.gamma;
  auto level = [&](int k) -> const std::vector<Complex>& {
    static const std::vector<Complex> empty;
    return k >= 1 && k <= N ? sub.mu_roots[k - 1] : empty;
  };

  std::vector<Complex> out;
  for (int k = 1; k < N; ++k) {
    const auto& M = level(k);
    const double dk = k;
    for (std::size_t i = 0; i < M.size(); ++i) {
      const Complex m = M[i];
      Complex L = h_k_sinh(k, m, N, params.l_minus, params.l_plus, g, sub.xi_minus, sub.xi_plus);
      for (std::size_t j = 0; j < M.size(); ++j) {
        if (j == i) continue;
        const Complex mj = M[j];
        L *= sinh(m + mj + (dk - 1) * g) * sinh(m - mj - g) / (sinh(m + mj + (dk + 1) * g) * sinh(m - mj + g));
      }
      Complex R = 1.0;
      for (Complex mj : level(k + 1))
        R *= sinh(m + mj + dk * g) * sinh(m - mj - g) / (sinh(m + mj + (dk + 1) * g) * sinh(m - mj));
      for (Complex mj : level(k - 1))
        R *= sinh(m + mj + (dk - 1) * g) * sinh(m - mj) / (sinh(m + mj + dk * g) * sinh(m - mj + g));
      out.push_back(L / R - 1.0);
    }
  }
  return out;
}

BetheProblemGLN devega_problem(const DeVegaParams& params, Complex q, const std::vector<int>& magnons,
                               const std::vector<Complex>& level_N_roots) {
  const int N = params.n_rank;
  if (static_cast<int>(magnons.size()) != N - 1) throw DomainError("magnon counts must list levels 1..N-1");
  BetheProblemGLN p;
  p.q = q;
  p.N = N;
  p.magnons = magnons;
  p.Lambda = SymmetricFactoredPoly{1.0, N, level_N_roots};
  p.Z = build_devega(params, q);
  p.symmetric_level_offset = 1;
  return p;
}

TwistProfile devega_example_n2(Complex b_minus, Complex b_plus, Complex q) {
  LaurentPoly den({{2, q * q}, {0, -1.0}});
  RationalFn xi1(lin(b_minus * q, -1.0) * lin(q * q, -b_plus), den);
  RationalFn xi2(-q * (lin(-q, b_minus) * lin(b_plus, -1.0)), den);
  return TwistProfile{q, {xi1, xi2}};
}

QPowerFit fit_q_power(const RationalFn& ours, const RationalFn& reference, Complex q, int samples,
                      std::uint64_t seed) {
  if (samples < 1) throw DomainError("need at least one sample");
  Sampler sampler(seed);
  auto pts = sampler.points(samples, q, [&](Complex z) { return near_pole({ours, reference}, z); });
  std::vector<Complex> ratios;
  for (Complex z : pts) ratios.push_back(rational_eval(ours, z) / rational_eval(reference, z));

  QPowerFit fit;
  const Complex r0 = ratios.front();
  double best = INFINITY;
  for (int m = -6; m <= 6; ++m) {
    const Complex qm = ipow(q, m);
    double dev = std::abs(r0 - qm) / std::abs(qm);
    if (dev < best) {
      best = dev;
      fit.power = m;
    }
  }
  const Complex qm = ipow(q, fit.power);
  for (Complex r : ratios) {
    fit.mismatch = std::max(fit.mismatch, std::abs(r - qm) / std::abs(qm));
    fit.constancy = std::max(fit.constancy, std::abs(r - r0) / std::abs(r0));
  }
  return fit;
}

Report devega_example_check(const DeVegaParams& params, Complex q, int samples, double tol, std::uint64_t seed) {
  if (params.n_rank != 2 || params.l_minus != 1 || params.l_plus != 1)
    throw DomainError("the worked example has N = 2 and l_- = l_+ = 1");
  const TwistProfile ours = build_devega(params, q);
  const TwistProfile ref = devega_example_n2(params.b_minus, params.b_plus, q);
  Report r;
  r.data["q_powers"] = nlohmann::json::array();
  for (int i = 1; i <= 2; ++i) {
    QPowerFit f = fit_q_power(ours.xi[i - 1], ref.xi[i - 1], q, samples, seed + i);
    const std::string tag = "xi_" + std::to_string(i);
    r.add(tag + " ratio to worked example is constant", "devega-example", f.constancy, tol);
    r.add(tag + " ratio equals q^" + std::to_string(f.power), "devega-example", f.mismatch, tol);
    r.data["q_powers"].push_back(f.power);
  }
  return r;
}

// ---- transport checks ----

Report vw_transport_check(const BetheProblemGL2& p, const std::vector<Complex>& roots, double tol) {
  if (p.twist.kind != GL2Kind::ConstantAsymptotics) throw DomainError("VW dictionary needs constant asymptotics");
  GL2Data data{p.q, roots, p.inhomogeneities, p.twist};
  Report r;
  const SubstitutionVW sub = vw_inverse(data, VWDictionary::Corrected);
  r.add("VW equations at transported roots (corrected dictionary)", "vw-dictionary", max_abs(vw_residual(sub)), tol);

  const GL2Data back = vw_map(sub, VWDictionary::Corrected);
  double dev = std::abs(back.q - p.q) / std::abs(p.q);
  for (std::size_t i = 0; i < roots.size(); ++i) dev = std::max(dev, std::abs(back.roots[i] - roots[i]) / std::abs(roots[i]));
  for (std::size_t i = 0; i < p.inhomogeneities.size(); ++i)
    dev = std::max(dev, std::abs(back.inhomogeneities[i] - p.inhomogeneities[i]) / std::abs(p.inhomogeneities[i]));
  dev = std::max(dev, std::abs(back.twist.mu - p.twist.mu) / std::abs(p.twist.mu));
  dev = std::max(dev, std::abs(back.twist.mu_tilde - p.twist.mu_tilde) / std::abs(p.twist.mu_tilde));
  r.add("VW dictionary round trip", "vw-dictionary", dev, 1e-12);

  const SubstitutionVW printed = vw_inverse(data, VWDictionary::Printed);
  r.data["printed_dictionary_residual"] = max_abs(vw_residual(printed));
  return r;
}

Report ynz_transport_check(const SubstitutionYNZ& sub, const std::vector<Complex>& roots, double tol) {
  SubstitutionYNZ s = sub;
  s.v = ynz_inverse_roots(roots, sub.eta);
  Report r;
  double worst = 0.0;
  for (double x : ynz_relative_residual(s)) worst = std::max(worst, x);
  r.add("YNZ equations at transported roots", "ynz-dictionary", worst, tol);

  const std::vector<Complex> back = ynz_roots(s);
  double dev = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i) dev = std::max(dev, std::abs(back[i] - roots[i]) / std::abs(roots[i]));
  r.add("YNZ root map round trip", "ynz-dictionary", dev, 1e-12);
  return r;
}

Report devega_transport_check(const BetheProblemGLN& problem, const DeVegaParams& params, const LevelRoots& roots,
                              double tol) {
  const int N = problem.N;
  if (params.n_rank != N) throw DomainError("rank mismatch between problem and De Vega parameters");
  if (static_cast<int>(roots.size()) != N - 1) throw DomainError("roots must list levels 1..N-1");
  DeVegaData data;
  data.q = problem.q;
  data.s = roots;
  data.s.push_back(problem.Lambda.roots);
  data.b_minus = params.b_minus;
  data.b_plus = params.b_plus;
  const SubstitutionDeVega sub = devega_inverse(data);

  Report r;
  r.add("De Vega equations (exponential form) at transported roots", "devega-dictionary",
        max_abs(devega_residual(sub, params, problem.magnons)), tol);
  r.add("De Vega equations (hyperbolic form) at transported roots", "devega-dictionary",
        max_abs(devega_residual_sinh(sub, params, problem.magnons)), tol);
  return r;
}

}  // namespace qoper
