#include "qoper/twist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qoper/literature.hpp"
#include "qoper/sampling.hpp"

namespace qoper {

namespace {

LaurentPoly lin(Complex c1, Complex c0) { return LaurentPoly({{1, c1}, {0, c0}}); }

double rel_dev(Complex l, Complex r) {
  double s = std::max(std::abs(l), std::abs(r));
  if (s == 0.0) return 0.0;
  return std::abs(l - r) / s;
}

// f(z) = (z - r) / (1/(qz) - r); satisfies f(z) f(1/(qz)) = 1
RationalFn unit_ratio(Complex r, Complex q) {
  return RationalFn(lin(1.0, -r), LaurentPoly({{-1, 1.0 / q}, {0, -r}}));
}

// effective lowest/highest exponent ignoring coefficients that are pure rounding noise
std::pair<int, int> effective_range(const LaurentPoly& p) {
  double tol = 1e-11 * p.norm_inf();
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& [n, c] : p.terms()) {
    if (std::abs(c) <= tol) continue;
    if (first) lo = n;
    hi = n;
    first = false;
  }
  return {lo, hi};
}

}  // namespace

double max_relative_deviation(int samples, std::uint64_t seed, Complex q,
                              const std::function<std::vector<std::pair<Complex, Complex>>(Complex)>& pairs) {
  Sampler sampler(seed);
  double worst = 0.0;
  int done = 0, attempts = 0;
  while (done < samples) {
    if (++attempts > 10 * samples + 10) throw PoleError("sampling kept landing on poles");
    Complex z = sampler.annulus();
    Complex fixed = 1.0 / std::sqrt(q);
    if (std::abs(z - fixed) < 1e-3 || std::abs(z + fixed) < 1e-3) continue;
    std::vector<std::pair<Complex, Complex>> vals;
    try {
      vals = pairs(z);
    } catch (const PoleError&) {
      continue;
    }
    for (const auto& [l, r] : vals) worst = std::max(worst, rel_dev(l, r));
    ++done;
  }
  return worst;
}

TwistProfile build_gl2_constant(const GL2TwistParams& p, Complex q) {
  if (q == Complex(0.0)) throw DomainError("q = 0");
  if (p.mu == Complex(0.0) || p.mu_tilde == Complex(0.0)) throw DomainError("mu and mu_tilde must be nonzero");
  LaurentPoly den({{2, q}, {0, -1.0}});
  RationalFn xi1(q * lin(1.0, -p.mu) * lin(1.0, -p.mu_tilde), den);
  RationalFn xi2(lin(q * p.mu, -1.0) * lin(q * p.mu_tilde, -1.0), den);
  return {q, {xi1, xi2}};
}

TwistProfile build_gl2_simple_pole(const GL2TwistParams& p, Complex q) {
  if (q == Complex(0.0)) throw DomainError("q = 0");
  if (!p.b || !p.b_tilde) throw DomainError("simple-pole twist requires b and b_tilde");
  if (p.mu == Complex(0.0) || p.mu_tilde == Complex(0.0) || *p.b == Complex(0.0) ||
      *p.b_tilde == Complex(0.0))
    throw DomainError("twist parameters must be nonzero");
  LaurentPoly den({{3, q}, {1, -1.0}});  // (q z^2 - 1) z
  RationalFn xi1(q * q * lin(1.0, -p.mu) * lin(1.0, -p.mu_tilde) * lin(1.0, *p.b) * lin(1.0, *p.b_tilde), den);
  RationalFn xi2(lin(q * p.mu, -1.0) * lin(q * p.mu_tilde, -1.0) * lin(q * *p.b, 1.0) *
                     lin(q * *p.b_tilde, 1.0),
                 den);
  return {q, {xi1, xi2}};
}

TwistProfile build_gl2(const GL2TwistParams& p, Complex q) {
  return p.kind == GL2Kind::ConstantAsymptotics ? build_gl2_constant(p, q) : build_gl2_simple_pole(p, q);
}

Report check_reflection_gl2(const TwistProfile& Z, double tol, int samples, std::uint64_t seed,
                            int reflect_power) {
  if (Z.N() != 2) throw DomainError("check_reflection_gl2 needs N = 2");
  Complex qp = ipow(Z.q, reflect_power);
  double dev = max_relative_deviation(samples, seed, Z.q, [&](Complex z) {
    Complex w = 1.0 / (qp * z);
    return std::vector<std::pair<Complex, Complex>>{{Z(1, w), -Z(2, z)}, {Z(2, w), -Z(1, z)}};
  });
  Report r;
  r.add("gl2 reflection of twist components", "gl2-twist-reflection", dev, tol);
  return r;
}

Report check_det_reflection_gl2(const TwistProfile& Z, double tol, int samples, std::uint64_t seed) {
  if (Z.N() != 2) throw DomainError("check_det_reflection_gl2 needs N = 2");
  double dev = max_relative_deviation(samples, seed, Z.q, [&](Complex z) {
    Complex w = 1.0 / (Z.q * z);
    Complex det_w = Z(1, w) * Z(2, w);
    return std::vector<std::pair<Complex, Complex>>{{Z(1, z) * Z(1, w), -det_w}, {Z(2, z) * Z(2, w), -det_w}};
  });
  Report r;
  r.add("A(z)A(1/(qz)) = -det A(1/(qz))", "gl2-det-reflection", dev, tol);
  return r;
}

Report check_reflection_glN(const TwistProfile& Z, double tol, int samples, std::uint64_t seed) {
  const int N = Z.N();
  if (N < 2) throw DomainError("check_reflection_glN needs N >= 2");
  const Complex q = Z.q;
  Report r;
  double dev1 = max_relative_deviation(samples, seed, q, [&](Complex z) {
    Complex w = 1.0 / (q * z);
    Complex lhs = -Z(N, w) * Z(N - 1, w);
    std::vector<std::pair<Complex, Complex>> out;
    for (int i = 1; i <= N; ++i) out.push_back({lhs, Z(i, z) * Z(i, w)});
    return out;
  });
  r.add("-xi_N xi_{N-1}(1/(qz)) = xi_i(z) xi_i(1/(qz))", "glN-reflection-first", dev1, tol);
  for (int k = 3; k <= N; ++k) {
    double dev = max_relative_deviation(samples, seed + k, q, [&](Complex z) {
      Complex w = 1.0 / (ipow(q, k - 1) * z);
      Complex lhs = Z(N, w) * Z(N - 1, w);
      Complex num = 1.0, den = 1.0;
      for (int i = 1; i <= k - 1; ++i) num *= Z(N + 1 - k, 1.0 / (ipow(q, i) * z));
      for (int i = 1; i <= k - 3; ++i) den *= Z(N + 2 - k, 1.0 / (ipow(q, i + 1) * z));
      return std::vector<std::pair<Complex, Complex>>{{lhs, num / den}};
    });
    r.add("reflection constraint k=" + std::to_string(k), "glN-reflection-k", dev, tol);
  }
  return r;
}

TwistProfile build_gl3_example(Complex a, const std::vector<Complex>& c, Complex q) {
  if (a == Complex(0.0)) throw DomainError("a = 0");
  if (q == Complex(0.0)) throw DomainError("q = 0");
  LaurentPoly p = a * LaurentPoly({{1, 1.0}, {-1, -1.0}});
  for (const auto& cj : c) {
    if (cj == Complex(0.0)) throw DomainError("zero c_j");
    p *= lin(1.0, -cj) * LaurentPoly({{-1, 1.0}, {0, -cj}});
  }
  RationalFn xi1(p);
  return {q, {xi1, xi1, q_shift(xi1, q, 1)}};
}

TwistProfile build_gl3_example(Complex a, const std::vector<Complex>& c, Complex q, Complex ratio_root) {
  TwistProfile base = build_gl3_example(a, c, q);
  RationalFn f = unit_ratio(ratio_root, q);
  base.xi[1] = base.xi[0] / f;
  base.xi[2] = f * base.xi[2];
  return base;
}

TwistProfile build_gl4_example(Complex scale, Complex ratio_root, Complex q) {
  if (scale == Complex(0.0) || q == Complex(0.0)) throw DomainError("scale and q must be nonzero");
  auto odd = [](Complex c) { return LaurentPoly({{1, c}, {-1, -1.0 / c}}); };  // cz - 1/(cz)
  LaurentPoly f = odd(1.0) * odd(q) * odd(1.0 / q);
  LaurentPoly z2m1({{2, 1.0}, {0, -1.0}});
  LaurentPoly h = (1.0 / q) * LaurentPoly::monomial(-3) * z2m1 * z2m1 * LaurentPoly({{2, 1.0}, {0, -q * q}});
  RationalFn g = unit_ratio(ratio_root, q);
  RationalFn xi1(scale * h), xi2(scale * f);
  RationalFn xi3 = RationalFn(scale * q_shift(f, q, 1)) * g;
  RationalFn xi4 = RationalFn(scale * f) / g;
  return {q, {xi1, xi2, xi3, xi4}};
}

Report check_gl3_determinant_relation(const TwistProfile& Z, double tol, int samples, std::uint64_t seed) {
  if (Z.N() != 3) throw DomainError("needs N = 3");
  double dev = max_relative_deviation(samples, seed, Z.q, [&](Complex z) {
    Complex w = 1.0 / (Z.q * z);
    Complex g3 = Z(3, z) * Z(3, w);
    return std::vector<std::pair<Complex, Complex>>{{g3, Z(2, z) * Z(2, w)}, {g3, Z(1, z) * Z(1, w)}};
  });
  Report r;
  r.add("xi_i(z) xi_i(1/(qz)) independent of i", "gl3-determinant-relation", dev, tol);
  return r;
}

Report check_gl4_third_constraint(const TwistProfile& Z, double tol, int samples, std::uint64_t seed) {
  if (Z.N() != 4) throw DomainError("needs N = 4");
  const Complex q = Z.q;
  double dev = max_relative_deviation(samples, seed, q, [&](Complex z) {
    Complex lhs = 1.0;
    for (int j = 1; j <= 3; ++j)
      for (int i = 1; i <= 4; ++i) lhs *= Z(i, 1.0 / (ipow(q, j) * z));
    auto p34 = [&](int j) {
      Complex w = 1.0 / (ipow(q, j) * z);
      return Z(3, w) * Z(4, w);
    };
    Complex rhs = ipow(p34(3), 3) * ipow(p34(2), 2) * p34(1);
    return std::vector<std::pair<Complex, Complex>>{{lhs, rhs}};
  });
  Report r;
  r.add("gl4 third constraint", "gl4-third-constraint", dev, tol);
  return r;
}

RationalFn devega_seed(const DeVegaParams& p, Complex q) {
  const int l = p.l_minus;
  LaurentPoly den({{2, q * q}, {0, -ipow(q, l - 1)}});
  LaurentPoly num = lin(q * p.b_minus, -1.0);
  if (p.l_minus == p.l_plus)
    num *= lin(q * q, -p.b_plus);
  else
    num *= lin(1.0, -p.mu_free);
  RationalFn seed(num, den);
  if (p.pole_at_zero)
    seed = seed * RationalFn(lin(1.0, p.pole_b) * lin(1.0, p.pole_b_tilde), LaurentPoly::monomial(1));
  return seed;
}

TwistProfile build_devega(const DeVegaParams& p, Complex q) {
  const int N = p.n_rank;
  if (N < 2 || p.l_minus < 1 || p.l_minus > N - 1 || p.l_plus < 1 || p.l_plus > N - 1)
    throw DomainError("De Vega parameters need 1 <= l_minus, l_plus <= N-1");
  if (p.b_minus == Complex(0.0) || p.b_plus == Complex(0.0)) throw DomainError("b_minus, b_plus must be nonzero");
  if (q == Complex(0.0)) throw DomainError("q = 0");

  // ratio R_k(z) = xi_{N-k+1}(z) / xi_{N-k}(qz)
  auto ratio = [&](int k) {
    RationalFn h = q_shift(devega_h(k, p, q), q, -(k - 2));
    RationalFn tail(LaurentPoly({{2, ipow(q, 4)}, {0, -ipow(q, k - 1)}}),
                    LaurentPoly({{2, q * q}, {0, -ipow(q, k - 1)}}));
    return ipow(q, p.ratio_q_power) * h * tail;
  };

  std::vector<RationalFn> xi(N + 1);
  const int seed_index = N - p.l_minus;
  xi[seed_index] = devega_seed(p, q);
  for (int m = seed_index; m <= N - 1; ++m) xi[m + 1] = q_shift(xi[m], q, 1) * ratio(N - m);
  for (int m = seed_index - 1; m >= 1; --m) xi[m] = q_shift(xi[m + 1] / ratio(N - m), q, -1);

  TwistProfile Z{q, {}};
  for (int i = 1; i <= N; ++i) {
    if (xi[i].num.is_zero() || xi[i].den.is_zero())
      throw ConstraintError("De Vega recursion produced a degenerate component " + std::to_string(i));
    Z.xi.push_back(xi[i]);
  }
  return Z;
}

std::vector<Asymptote> asymptotics(const TwistProfile& Z) {
  std::vector<Asymptote> out;
  for (const auto& f : Z.xi) {
    auto [nlo, nhi] = effective_range(f.num);
    auto [dlo, dhi] = effective_range(f.den);
    Asymptote a;
    a.order_zero = nlo - dlo;
    a.coeff_zero = f.num.coeff(nlo) / f.den.coeff(dlo);
    a.order_inf = -(nhi - dhi);
    a.coeff_inf = f.num.coeff(nhi) / f.den.coeff(dhi);
    out.push_back(a);
  }
  return out;
}

std::vector<std::pair<int, int>> devega_expected_orders(const DeVegaParams& p) {
  const int N = p.n_rank;
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= N; ++i) {
    bool linear = false;  // xi ~ z at 0 and ~ 1/w at infinity
    if (p.l_minus < p.l_plus)
      linear = i <= N - p.l_plus || i > N - p.l_minus;
    else if (p.l_plus < p.l_minus)
      linear = i > N - p.l_minus && i <= N - p.l_plus;
    int o0 = linear ? 1 : 0;
    int oi = linear ? -1 : 0;
    // the simple pole at 0 lowers the order at 0 and at infinity by one
    if (p.pole_at_zero) {
      o0 -= 1;
      oi -= 1;
    }
    out.push_back({o0, oi});
  }
  return out;
}

Report regular_semisimple_check(const TwistProfile& Z, int samples, std::uint64_t seed) {
  const int N = Z.N();
  std::vector<std::vector<int>> hits(N, std::vector<int>(N, 0));
  int evaluated = 0;
  max_relative_deviation(samples, seed, Z.q, [&](Complex z) {
    std::vector<Complex> v(N);
    for (int i = 0; i < N; ++i) v[i] = Z(i + 1, z);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        if (rel_dev(v[i], v[j]) <= 1e-10) ++hits[i][j];
    ++evaluated;
    return std::vector<std::pair<Complex, Complex>>{};
  });
  Report r;
  int total = 0;
  nlohmann::json loci = nlohmann::json::array();
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (hits[i][j] > 0) {
        total += hits[i][j];
        loci.push_back({{"pair", {i + 1, j + 1}}, {"coincident_samples", hits[i][j]}});
      }
  r.data["coincidences"] = loci;
  r.data["samples"] = evaluated;
  r.add("twist components pairwise distinct", "regular-semisimple", static_cast<double>(total), 0.0);
  return r;
}

}  // namespace qoper
