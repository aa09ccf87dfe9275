#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qoper/laurent.hpp"
#include "qoper/sampling.hpp"

using namespace qoper;

namespace {

std::map<int, Complex> random_terms(oracle::Rng& r, int lo, int hi) {
  std::map<int, Complex> t;
  for (int e = lo; e <= hi; ++e)
    if (r.u() < 0.7) t[e] = r.c();
  return t;
}

}  // namespace

TEST_CASE("evaluation agrees with a naive power sum") {
  oracle::Rng r(1);
  for (int i = 0; i < 50; ++i) {
    auto t = random_terms(r, -5, 6);
    LaurentPoly p(t);
    Complex z = r.ring(0.3, 3.0);
    CHECK(oracle::rel(eval(p, z), oracle::eval(t, z)) < 1e-12);
    CHECK(oracle::rel(p(z), oracle::eval(t, z)) < 1e-12);
  }
}

TEST_CASE("arithmetic matches naive convolution") {
  oracle::Rng r(2);
  for (int i = 0; i < 30; ++i) {
    auto a = random_terms(r, -3, 4), b = random_terms(r, -4, 2);
    LaurentPoly pa(a), pb(b);
    Complex z = r.ring();
    CHECK(oracle::rel(eval(pa * pb, z), oracle::eval(oracle::mul(a, b), z)) < 1e-12);
    CHECK(oracle::rel(eval(pa + pb, z), oracle::eval(a, z) + oracle::eval(b, z)) < 1e-12);
    CHECK(oracle::rel(eval(pa - pb, z), oracle::eval(a, z) - oracle::eval(b, z)) < 1e-12);
    Complex c = r.c();
    CHECK(oracle::rel(eval(c * pa, z), c * oracle::eval(a, z)) < 1e-12);
  }
}

TEST_CASE("cancellation prunes to the zero polynomial") {
  LaurentPoly p{{-2, 1.0}, {3, Complex(0.0, 2.0)}};
  LaurentPoly z = p - p;
  CHECK(z.is_zero());
  CHECK(z.radius() == 0);
  CHECK(z.norm_inf() == 0.0);
  CHECK(p.min_exp() == -2);
  CHECK(p.max_exp() == 3);
  CHECK(p.radius() == 3);
  CHECK(p.coeff(1) == Complex(0.0));
}

TEST_CASE("q-shift and reflection act on arguments") {
  oracle::Rng r(3);
  for (int i = 0; i < 30; ++i) {
    auto t = random_terms(r, -4, 4);
    LaurentPoly p(t);
    Complex q = r.ring(0.6, 1.6), z = r.ring();
    int m = static_cast<int>(r.u(-3, 4)), k = static_cast<int>(r.u(0, 4));
    CHECK(oracle::rel(eval(q_shift(p, q, m), z), oracle::eval(t, std::pow(q, m) * z)) < 1e-11);
    CHECK(oracle::rel(eval(reflect(p, q, k), z), oracle::eval(t, 1.0 / (std::pow(q, k) * z))) < 1e-11);
  }
}

TEST_CASE("from_roots vanishes at its roots and expands a product") {
  oracle::Rng r(4);
  std::vector<Complex> roots{r.c(), r.c(), r.c()};
  LaurentPoly p = LaurentPoly::from_roots(roots, 2.0);
  for (Complex s : roots) CHECK(std::abs(eval(p, s)) < 1e-12);
  Complex z = r.ring();
  CHECK(oracle::rel(eval(p, z), 2.0 * (z - roots[0]) * (z - roots[1]) * (z - roots[2])) < 1e-12);
}

TEST_CASE("symmetric factored polynomials are invariant at their level") {
  oracle::Rng r(5);
  for (int i = 0; i < 50; ++i) {
    Complex q = r.ring(0.6, 1.6);
    int level = static_cast<int>(r.u(0, 3));
    SymmetricFactoredPoly f{r.c(), level, {r.ring(), r.ring()}};
    LaurentPoly p = expand(f, q);
    CHECK(is_invariant(p, q, level, 1e-12));
    CHECK(relative_distance(p, reflect(p, q, level)) < 1e-12);
    // direct product oracle
    Complex z = r.ring();
    Complex direct = f.scale;
    for (Complex s : f.roots) direct *= (z - s) * (1.0 / (std::pow(q, level) * z) - s);
    CHECK(oracle::rel(eval(p, z), direct) < 1e-12);
  }
}

TEST_CASE("a generic polynomial is not invariant") {
  LaurentPoly p{{1, 1.0}, {0, 0.3}};
  CHECK_FALSE(is_invariant(p, Complex(0.8, 0.3), 0));
}

TEST_CASE("approx_equal uses a relative scale") {
  LaurentPoly p{{0, 1e6}, {1, 1.0}};
  LaurentPoly q{{0, 1e6 + 1e-6}, {1, 1.0}};
  CHECK(approx_equal(p, q, 1e-10));
  CHECK_FALSE(approx_equal(p, LaurentPoly{{0, 1e6}, {1, 2.0}}, 1e-10));
}

TEST_CASE("rational functions compose and detect poles") {
  oracle::Rng r(6);
  LaurentPoly num{{1, 1.0}, {0, -2.0}};
  LaurentPoly den{{2, 1.0}, {0, -1.0}};
  RationalFn f(num, den);
  Complex z = r.ring();
  CHECK(oracle::rel(rational_eval(f, z), (z - 2.0) / (z * z - 1.0)) < 1e-12);
  Complex q(0.9, 0.2);
  CHECK(oracle::rel(rational_eval(q_shift(f, q, 2), z), rational_eval(f, q * q * z)) < 1e-12);
  CHECK(oracle::rel(rational_eval(reflect(f, q, 1), z), rational_eval(f, 1.0 / (q * z))) < 1e-12);
  CHECK(oracle::rel(rational_eval(f * f, z), std::pow(rational_eval(f, z), 2)) < 1e-12);
  CHECK(oracle::rel(rational_eval(f / f, z), 1.0) < 1e-12);
  CHECK_THROWS_AS(rational_eval(f, 1.0), PoleError);
  CHECK_THROWS_AS(RationalFn(num, LaurentPoly()), DomainError);
}

TEST_CASE("domain errors") {
  LaurentPoly p{{-1, 1.0}};
  CHECK_THROWS_AS(eval(p, 0.0), DomainError);
  CHECK_THROWS_AS(q_shift(p, 0.0, 1), DomainError);
  CHECK_THROWS_AS(reflect(p, 0.0, 1), DomainError);
  CHECK_THROWS_AS(expand(SymmetricFactoredPoly{1.0, 0, {0.0}}, 1.0), DomainError);
  CHECK_THROWS_AS(LaurentPoly({{0, Complex(NAN, 0.0)}}), DomainError);
}

TEST_CASE("ipow matches std::pow for negative exponents") {
  Complex z(0.7, -1.3);
  for (int n = -6; n <= 6; ++n) CHECK(oracle::rel(ipow(z, n), std::pow(z, n)) < 1e-13);
}

TEST_CASE("sampler is deterministic and respects the annulus") {
  Sampler a(9), b(9);
  for (int i = 0; i < 20; ++i) {
    Complex x = a.annulus(0.3, 3.0);
    CHECK(x == b.annulus(0.3, 3.0));
    CHECK(std::abs(x) >= 0.3 - 1e-12);
    CHECK(std::abs(x) <= 3.0 + 1e-12);
  }
  auto pts = Sampler(3).points(40, Complex(0.8, 0.1));
  CHECK(pts.size() == 40);
}
