#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qoper/wronskian.hpp"

using namespace qoper;
using Mat = std::vector<std::vector<Complex>>;

namespace {

Mat to_rows(const Eigen::MatrixXcd& M) {
  Mat m(M.rows(), std::vector<Complex>(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) m[i][j] = M(i, j);
  return m;
}

SectionVec random_section(oracle::Rng& r, int N, Complex q) {
  SectionVec s;
  for (int i = 0; i < N; ++i) s.components.push_back(expand(SymmetricFactoredPoly{r.c(), 0, {r.ring(), r.ring()}}, q));
  return s;
}

// entry (i, j) of the twisted q-Wronskian column: xi_i(q^{k-2}z)...xi_i(q^{k-j}z) s_i(q^{k-j}z)
Complex entry(const SectionVec& s, const TwistProfile& Z, int i, int j, int k, Complex z) {
  const Complex q = Z.q;
  Complex v = oracle::eval(s.components[i - 1].terms(), std::pow(q, k - j) * z);
  for (int m = k - j; m <= k - 2; ++m) v *= Z(i, std::pow(q, m) * z);
  return v;
}

TwistProfile consistent_twist(oracle::Rng& r, int N, Complex q) {
  if (N == 2) {
    GL2TwistParams t;
    t.mu = r.ring();
    t.mu_tilde = r.ring();
    return build_gl2_constant(t, q);
  }
  if (N == 3) return build_gl3_example(r.ring(), {r.ring()}, q, r.ring());
  return build_gl4_example(r.ring(), r.ring(), q);
}

}  // namespace

TEST_CASE("determinant and minors agree with the Leibniz expansion") {
  oracle::Rng r(20);
  for (int n = 1; n <= 6; ++n) {
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = r.c();
    CHECK(oracle::rel(det(M), oracle::det(to_rows(M))) < 1e-11);
    if (n >= 2) {
      int a = static_cast<int>(r.u(0, n)), b = static_cast<int>(r.u(0, n));
      CHECK(to_rows(minor_matrix(M, a, b)) == oracle::drop(to_rows(M), a, b));
    }
  }
  CHECK(det(Eigen::MatrixXcd(0, 0)) == Complex(1.0));
}

TEST_CASE("Lewis Carroll identity on random matrices") {
  oracle::Rng r(21);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 4;
    EvaluatedMatrix M{n, Eigen::MatrixXcd(n, n), 0.0};
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M.entries(a, b) = r.c();
    CHECK(lewis_carroll_check(M, 1e-10).all_pass());
    // same identity with the oracle determinant
    Mat A = to_rows(M.entries);
    Complex lhs = oracle::det(oracle::drop(A, 0, 0)) * oracle::det(oracle::drop(A, 1, n - 1)) -
                  oracle::det(oracle::drop(A, 0, n - 1)) * oracle::det(oracle::drop(A, 1, 0));
    Complex rhs = oracle::det(oracle::drop(oracle::drop(A, 0, n - 1), 0, 0)) * oracle::det(A);
    CHECK(oracle::rel(lhs, rhs) < 1e-9);
  }
  EvaluatedMatrix one{1, Eigen::MatrixXcd::Ones(1, 1), 0.0};
  CHECK_THROWS_AS(lewis_carroll_check(one, 1e-10), DomainError);
}

TEST_CASE("M matrix entries and the Q minors") {
  oracle::Rng r(22);
  for (int N : {2, 3, 4}) {
    Complex q = r.ring(0.6, 1.5);
    TwistProfile Z = consistent_twist(r, N, q);
    SectionVec s = random_section(r, N, q);
    Complex z = r.ring();
    for (int k = 1; k <= N; ++k) {
      EvaluatedMatrix M = build_M(s, Z, k, z);
      Mat ref(k, std::vector<Complex>(k));
      for (int a = 0; a < k; ++a)
        for (int j = 1; j <= k; ++j) {
          ref[a][j - 1] = entry(s, Z, N - k + 1 + a, j, k, z);
          CHECK(oracle::rel(M.entries(a, j - 1), ref[a][j - 1]) < 1e-11);
        }
      CHECK(oracle::rel(q_plus_minor(s, Z, k, z), oracle::det(ref)) < 1e-10);
      if (k <= N - 1) {
        Mat mref;
        std::vector<int> rows{N - k};
        for (int i = N - k + 2; i <= N; ++i) rows.push_back(i);
        for (int i : rows) {
          std::vector<Complex> row;
          for (int j = 1; j <= k; ++j) row.push_back(entry(s, Z, i, j, k, z));
          mref.push_back(row);
        }
        CHECK(oracle::rel(q_minus_minor(s, Z, k, z), oracle::det(mref)) < 1e-10);
      }
    }
    CHECK_THROWS_AS(build_M(s, Z, 0, z), DomainError);
    CHECK_THROWS_AS(q_minus_minor(s, Z, N, z), DomainError);
  }
}

TEST_CASE("q-Wronskian D_k against an explicit determinant") {
  oracle::Rng r(23);
  for (int N : {2, 3, 4}) {
    Complex q = r.ring(0.6, 1.5);
    TwistProfile Z = consistent_twist(r, N, q);
    SectionVec s = random_section(r, N, q);
    Complex z = r.ring();
    for (int k = 0; k <= N; ++k) {
      Mat W(N, std::vector<Complex>(N, 0.0));
      for (int c = 0; c < N - k; ++c) W[c][c] = 1.0;
      for (int j = 1; j <= k; ++j)
        for (int i = 1; i <= N; ++i) W[i - 1][N - k + j - 1] = entry(s, Z, i, j, k, z);
      CHECK(oracle::rel(wronskian_D(s, Z, k, z), oracle::det(W)) < 1e-10);
    }
    for (int k = 1; k <= N; ++k) {
      CHECK(wronskian_minor_consistency(s, Z, k, 30, 1e-10, k).all_pass());
      CHECK(check_Dk_symmetry(s, Z, k, 30, 1e-10, k).all_pass());
    }
  }
}

TEST_CASE("D_k symmetry prerequisites") {
  oracle::Rng r(24);
  Complex q(0.8, 0.3);
  TwistProfile Z = consistent_twist(r, 3, q);
  SectionVec s = random_section(r, 3, q);
  SectionVec bad = s;
  bad.components[2] = bad.components[2] + LaurentPoly::monomial(1, 0.5);
  CHECK_THROWS_AS(check_Dk_symmetry(bad, Z, 2, 20, 1e-10), PrereqError);
  TwistProfile broken = Z;
  broken.xi[0] = Complex(1.3) * broken.xi[0];
  CHECK_THROWS_AS(check_Dk_symmetry(s, broken, 2, 20, 1e-10), PrereqError);
  // without the guard the symmetry genuinely fails
  CHECK_FALSE(check_Dk_symmetry(bad, Z, 2, 20, 1e-10, 0, false).all_pass());
}

TEST_CASE("regular singularity polynomials") {
  oracle::Rng r(25);
  Complex q(0.9, 0.2);
  SingularityData d;
  for (int i = 0; i < 4; ++i) d.lambdas.push_back(LaurentPoly::from_roots({r.c(), r.c()}));
  Complex z = r.ring();
  auto lam = [&](int i, Complex x) { return oracle::eval(d.lambdas[i - 1].terms(), x); };
  // P_j = Lambda_{N-1} ... Lambda_{N-j}
  auto P = [&](int j, Complex x) {
    Complex v = 1.0;
    for (int i = 3; i >= std::max(4 - j, 1); --i) v *= lam(i, x);
    return v;
  };
  for (int j = 0; j <= 3; ++j) CHECK(oracle::rel(eval(regular_singularity_P(d, j), z), P(j, z)) < 1e-12);
  for (int k = 1; k <= 4; ++k) {
    Complex w = 1.0;
    for (int j = 1; j <= k; ++j) w *= P(j, std::pow(q, j - 1) * z);
    CHECK(oracle::rel(eval(regular_singularity_W(d, k, q), z), w) < 1e-11);
  }
  CHECK_THROWS_AS(regular_singularity_W(d, 0, q), DomainError);
}

TEST_CASE("W_k worked example and trivial singularities") {
  Complex q(0.9, 0.2), a(0.4, -0.7), z(1.1, 0.3);
  LaurentPoly lin = LaurentPoly::from_roots({a});
  SingularityData d{{lin, lin, LaurentPoly::constant(1.0)}};
  CHECK(oracle::rel(eval(regular_singularity_W(d, 2, q), z), (z - a) * (q * z - a) * (q * z - a)) < 1e-12);
  CHECK(oracle::rel(eval(regular_singularity_W(d, 1, q), z), z - a) < 1e-12);
  SingularityData ones{{LaurentPoly::constant(1.0), LaurentPoly::constant(1.0), lin}};
  for (int k = 1; k <= 3; ++k) CHECK(approx_equal(regular_singularity_W(ones, k, q), LaurentPoly::constant(1.0)));
}

TEST_CASE("minors of the enlarged M matrix") {
  oracle::Rng r(26);
  for (int N : {3, 4}) {
    Complex q = r.ring(0.6, 1.5);
    TwistProfile Z = consistent_twist(r, N, q);
    SectionVec s = random_section(r, N, q);
    Complex z = r.ring();
    for (int k = 1; k <= N - 1; ++k) {
      std::vector<int> rows;
      for (int i = N - k; i <= N; ++i) rows.push_back(i);
      Eigen::MatrixXcd big = build_M_rows(s, Z, k + 1, rows, z).entries;
      // drop the first row and the untwisted first column
      Complex twist = 1.0;
      for (int i = N - k + 1; i <= N; ++i) twist *= Z(i, std::pow(q, k - 1) * z);
      CHECK(oracle::rel(det(minor_matrix(big, 0, 0)), twist * q_plus_minor(s, Z, k, z)) < 1e-10);
      // drop the first row and the last column
      CHECK(oracle::rel(det(minor_matrix(big, 0, k)), q_plus_minor(s, Z, k, q * z)) < 1e-10);
    }
  }
}

TEST_CASE("column scaling by an invertible matrix") {
  oracle::Rng r(27);
  for (int n = 2; n <= 5; ++n) {
    Eigen::MatrixXcd M(n, n), U(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = r.c(), U(i, j) = r.c();
    const Eigen::MatrixXcd Minv = M.inverse();
    for (int c = 0; c < n; ++c) {
      Eigen::MatrixXcd lhs = U, rhs = Minv * U;
      lhs.col(c) = M * U.col(c);
      rhs.col(c) = U.col(c);
      CHECK(oracle::rel(det(lhs), det(M) * det(rhs)) < 1e-10);
    }
  }
}

TEST_CASE("trivial twist breaks D_k symmetry") {
  oracle::Rng r(28);
  Complex q(0.8, 0.3);
  SectionVec s = random_section(r, 3, q);
  TwistProfile ones{q, {RationalFn(LaurentPoly::constant(1.0)), RationalFn(LaurentPoly::constant(1.0)),
                        RationalFn(LaurentPoly::constant(1.0))}};
  CHECK_THROWS_AS(check_Dk_symmetry(s, ones, 2, 20, 1e-10), PrereqError);
  CHECK_FALSE(check_Dk_symmetry(s, ones, 2, 20, 1e-10, 0, false).all_pass());
}
