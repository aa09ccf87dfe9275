#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qoper/qq.hpp"
#include "qoper/wronskian.hpp"

using namespace qoper;
using Terms = std::map<int, Complex>;

namespace {

Terms shift(const Terms& t, Complex q) {
  Terms out;
  for (const auto& [e, c] : t) out[e] = c * std::pow(q, e);
  return out;
}

Terms sub(Terms a, const Terms& b) {
  for (const auto& [e, c] : b) a[e] -= c;
  return a;
}

Terms random_poly(oracle::Rng& r, int lo, int hi) {
  Terms t;
  for (int e = lo; e <= hi; ++e) t[e] = r.c();
  return t;
}

// xi_b Qp Qm(q.) - xi_a Qm Qp(q.) by naive convolution
Terms qq_rhs(const Terms& xa, const Terms& xb, const Terms& Qp, const Terms& Qm, Complex q) {
  using oracle::mul;
  return sub(mul(mul(xb, Qp), shift(Qm, q)), mul(mul(xa, Qm), shift(Qp, q)));
}

}  // namespace

TEST_CASE("GL(2) residual matches the direct formula and the 2x2 Wronskian") {
  oracle::Rng r(30);
  for (int i = 0; i < 30; ++i) {
    Complex q = r.ring(0.6, 1.5);
    Terms Qp = random_poly(r, -1, 2), Qm = random_poly(r, 0, 1), L = random_poly(r, -1, 1);
    RationalFn x1(LaurentPoly(random_poly(r, 0, 1)), LaurentPoly(random_poly(r, 0, 2)));
    RationalFn x2(LaurentPoly(random_poly(r, 0, 2)), LaurentPoly(random_poly(r, 0, 1)));
    QQInstanceGL2 inst{q, LaurentPoly(Qp), LaurentPoly(Qm), x1, x2, LaurentPoly(L)};
    Complex z = r.ring();
    Complex a1 = rational_eval(x1, z), a2 = rational_eval(x2, z);
    Complex direct = a2 * oracle::eval(Qp, z) * oracle::eval(Qm, q * z) -
                     a1 * oracle::eval(Qm, z) * oracle::eval(Qp, q * z) - oracle::eval(L, z);
    CHECK(oracle::rel(gl2_residual(inst, z), direct) < 1e-11);
    // det [ s(qz) | A(z) s(z) ] with s = (Q-, Q+), A = diag(xi1, xi2)
    std::vector<std::vector<Complex>> W{{oracle::eval(Qm, q * z), a1 * oracle::eval(Qm, z)},
                                        {oracle::eval(Qp, q * z), a2 * oracle::eval(Qp, z)}};
    CHECK(oracle::rel(gl2_residual(inst, z) + oracle::eval(L, z), oracle::det(W)) < 1e-11);
  }
}

TEST_CASE("a constructed GL(2) QQ instance passes and a perturbed one fails") {
  oracle::Rng r(31);
  Complex q(0.85, 0.3);
  Terms xa = random_poly(r, 0, 1), xb = random_poly(r, 0, 1);
  Terms Qp = random_poly(r, -1, 1), Qm = random_poly(r, -1, 1);
  Terms L = qq_rhs(xa, xb, Qp, Qm, q);
  QQInstanceGL2 inst{q, LaurentPoly(Qp), LaurentPoly(Qm), RationalFn(LaurentPoly(xa)), RationalFn(LaurentPoly(xb)),
                     LaurentPoly(L)};
  CHECK(qq_check_gl2(inst, 100, 1e-10, 1).all_pass());
  inst.Lambda = inst.Lambda + LaurentPoly::monomial(0, 1e-3);
  CHECK_FALSE(qq_check_gl2(inst, 100, 1e-10, 1).all_pass());
}

TEST_CASE("recover_Qminus reproduces a planted solution") {
  oracle::Rng r(32);
  for (int i = 0; i < 20; ++i) {
    Complex q = r.ring(0.6, 1.5);
    Terms xa = random_poly(r, 0, 1), xb = random_poly(r, 0, 1);
    Terms Qp = random_poly(r, -1, 1), Qm = random_poly(r, -1, 2);
    Terms L = qq_rhs(xa, xb, Qp, Qm, q);
    LaurentPoly rhs(L), P(Qp);
    QminusFit fit = recover_Qminus(q, P, RationalFn(LaurentPoly(xa)), RationalFn(LaurentPoly(xb)), rhs,
                                   default_degree_bound(P, rhs), i);
    CHECK(approx_equal(fit.Qm, LaurentPoly(Qm), 1e-8));
    CHECK(fit.fit_residual < 1e-10);
    CHECK(fit.fresh_residual < std::max(10.0 * fit.fit_residual, 1e-12));
    CHECK(fit.unknowns == 2 * default_degree_bound(P, rhs) + 1);
  }
}

TEST_CASE("recover_Qminus scalar case and degenerate twist") {
  Complex q(0.9, 0.1);
  RationalFn a(LaurentPoly::constant(Complex(0.4, 0.2))), b(LaurentPoly::constant(Complex(1.3, -0.5)));
  LaurentPoly rhs = LaurentPoly::constant(Complex(2.0, 1.0));
  QminusFit fit = recover_Qminus(q, LaurentPoly::constant(1.0), a, b, rhs, 0);
  CHECK(oracle::rel(fit.Qm.coeff(0), Complex(2.0, 1.0) / (Complex(1.3, -0.5) - Complex(0.4, 0.2))) < 1e-12);
  CHECK(fit.Qm.radius() == 0);
  CHECK_THROWS_AS(recover_Qminus(q, LaurentPoly::constant(1.0), a, a, rhs, 0), RankError);
  CHECK_THROWS_AS(recover_Qminus(q, LaurentPoly::constant(1.0), a, b, rhs, -1), DomainError);
  CHECK(default_degree_bound(LaurentPoly{{-2, 1.0}, {1, 1.0}}, LaurentPoly{{3, 1.0}}) == 5);
}

TEST_CASE("GL(N) residual matches the direct formula") {
  oracle::Rng r(33);
  Complex q(0.8, 0.35);
  QQInstanceGLN inst;
  inst.q = q;
  inst.N = 3;
  inst.Z = build_gl3_example(r.ring(), {r.ring()}, q, r.ring());
  std::vector<Terms> P{random_poly(r, -1, 1), random_poly(r, -1, 1), random_poly(r, 0, 2)};
  std::vector<Terms> M{random_poly(r, -1, 1), random_poly(r, 0, 1)};
  for (auto& t : P) inst.Qp.emplace_back(t);
  for (auto& t : M) inst.Qm.emplace_back(t);
  Terms one{{0, 1.0}};
  auto plus = [&](int k) { return k == 0 ? one : P[k - 1]; };
  for (int k = 1; k <= 2; ++k) {
    Complex z = r.ring(), zk = std::pow(q, k - 1) * z;
    Complex direct = inst.Z(3 - k + 1, zk) * oracle::eval(plus(k), z) * oracle::eval(M[k - 1], q * z) -
                     inst.Z(3 - k, zk) * oracle::eval(plus(k), q * z) * oracle::eval(M[k - 1], z) -
                     oracle::eval(plus(k - 1), q * z) * oracle::eval(plus(k + 1), z);
    CHECK(oracle::rel(glN_residual(inst, k, z), direct) < 1e-11);
  }
  CHECK_THROWS_AS(glN_residual(inst, 0, 1.0), DomainError);
  CHECK_THROWS_AS(glN_residual(inst, 3, 1.0), DomainError);
  CHECK_THROWS_AS(inst.plus(4), DomainError);
  CHECK(approx_equal(inst.plus(0), LaurentPoly::constant(1.0)));
}

TEST_CASE("Wronskian minors satisfy the GL(N) QQ relation pointwise") {
  oracle::Rng r(34);
  for (int N : {3, 4}) {
    Complex q = r.ring(0.7, 1.3);
    TwistProfile Z = N == 3 ? build_gl3_example(r.ring(), {r.ring()}, q, r.ring()) : build_gl4_example(r.ring(), r.ring(), q);
    SectionVec s;
    for (int i = 0; i < N; ++i) s.components.push_back(LaurentPoly(random_poly(r, -1, 1)));
    auto Qp = [&](int k, Complex x) { return k == 0 ? Complex(1.0) : q_plus_minor(s, Z, k, x); };
    for (int k = 1; k <= N - 1; ++k) {
      Complex z = r.ring(), zk = std::pow(q, k - 1) * z;
      Complex t1 = Z(N - k + 1, zk) * Qp(k, z) * q_minus_minor(s, Z, k, q * z);
      Complex t2 = Z(N - k, zk) * Qp(k, q * z) * q_minus_minor(s, Z, k, z);
      Complex t3 = Qp(k - 1, q * z) * Qp(k + 1, z);
      double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
      CHECK(std::abs(t1 - t2 - t3) / scale < 1e-9);
    }
  }
}

TEST_CASE("nondegeneracy detects lattice coincidences") {
  Complex q(0.8, 0.3);
  CHECK_FALSE(nondegeneracy_check(std::vector<std::vector<Complex>>{{2.0}, {2.0 * q}}, q, 1).all_pass());
  CHECK_FALSE(nondegeneracy_check(std::vector<std::vector<Complex>>{{2.0}, {0.5}}, q, 1).all_pass());
  CHECK_FALSE(nondegeneracy_check(std::vector<std::vector<Complex>>{{Complex(1.1, 0.4), Complex(1.1, 0.4)}}, q, 1)
                  .all_pass());
  // out of reach at depth 2, caught at depth 3
  std::vector<std::vector<Complex>> far{{2.0}, {2.0 * q * q * q}};
  CHECK(nondegeneracy_check(far, q, 2).all_pass());
  CHECK_FALSE(nondegeneracy_check(far, q, 3).all_pass());
  // self-partner: t^2 = q
  CHECK_FALSE(nondegeneracy_check(std::vector<std::vector<Complex>>{{1.0 / std::sqrt(q)}}, q, 1).all_pass());
  CHECK_FALSE(nondegeneracy_check(std::vector<std::vector<Complex>>{{0.0}}, q, 1).all_pass());
  CHECK_THROWS_AS(nondegeneracy_check(far, q, 0), DomainError);
}

TEST_CASE("reference families are not compared with each other") {
  Complex q(0.8, 0.3);
  std::vector<RootFamily> f{{"lambda", {2.0}, true}, {"twist", {2.0 * q}, true}, {"roots", {Complex(0.3, 1.7)}, false}};
  Report ok = nondegeneracy_check(f, q, 3);
  CHECK(ok.all_pass());
  CHECK(ok.data["violations"].empty());
  f[2].values.push_back(2.0 / q);
  Report bad = nondegeneracy_check(f, q, 3);
  CHECK_FALSE(bad.all_pass());
  CHECK(bad.data["violations"].size() >= 2);
}

TEST_CASE("generic random roots pass") {
  oracle::Rng r(35);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::vector<Complex>> fam{{r.ring(), r.ring(), r.ring()}, {r.ring(), r.ring()}};
    CHECK(nondegeneracy_check(fam, r.ring(0.6, 1.5), 5).all_pass());
  }
}
