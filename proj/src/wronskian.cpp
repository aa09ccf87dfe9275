#include "qoper/wronskian.hpp"

#include <algorithm>
#include <cmath>

namespace qoper {

EvaluatedMatrix build_M_rows(const SectionVec& s, const TwistProfile& Z, int k, const std::vector<int>& rows,
                             Complex z) {
  const Complex q = Z.q;
  const int n = static_cast<int>(rows.size());
  EvaluatedMatrix M{n, Eigen::MatrixXcd(n, k), z};
  for (int r = 0; r < n; ++r) {
    const int i = rows[r];
    for (int j = 1; j <= k; ++j) {
      Complex v = eval(s.components.at(i - 1), ipow(q, k - j) * z);
      for (int m = k - j; m <= k - 2; ++m) v *= Z(i, ipow(q, m) * z);
      M.entries(r, j - 1) = v;
    }
  }
  return M;
}

EvaluatedMatrix build_M(const SectionVec& s, const TwistProfile& Z, int k, Complex z) {
  const int N = s.N();
  if (k < 1 || k > N) throw DomainError("build_M needs 1 <= k <= N");
  std::vector<int> rows;
  for (int i = N - k + 1; i <= N; ++i) rows.push_back(i);
  return build_M_rows(s, Z, k, rows, z);
}

Complex det(const Eigen::MatrixXcd& M) {
  if (M.rows() == 0) return 1.0;
  return M.partialPivLu().determinant();
}

Complex det(const EvaluatedMatrix& M) { return det(M.entries); }

Eigen::MatrixXcd minor_matrix(const Eigen::MatrixXcd& M, int row, int col) {
  const int n = static_cast<int>(M.rows()), m = static_cast<int>(M.cols());
  Eigen::MatrixXcd out(n - 1, m - 1);
  for (int i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (int j = 0, oj = 0; j < m; ++j) {
      if (j == col) continue;
      out(oi, oj++) = M(i, j);
    }
    ++oi;
  }
  return out;
}

Complex q_plus_minor(const SectionVec& s, const TwistProfile& Z, int k, Complex z) {
  return det(build_M(s, Z, k, z));
}

Complex q_minus_minor(const SectionVec& s, const TwistProfile& Z, int k, Complex z) {
  const int N = s.N();
  if (k < 1 || k > N - 1) throw DomainError("q_minus_minor needs 1 <= k <= N-1");
  std::vector<int> rows{N - k};
  for (int i = N - k + 2; i <= N; ++i) rows.push_back(i);
  return det(build_M_rows(s, Z, k, rows, z));
}

Report lewis_carroll_check(const EvaluatedMatrix& M, double tol) {
  const int n = M.dim;
  if (n < 2) throw DomainError("Lewis Carroll identity needs dim >= 2");
  const auto& A = M.entries;
  Complex d11 = det(minor_matrix(A, 0, 0));
  Complex d2n = det(minor_matrix(A, 1, n - 1));
  Complex d1n = det(minor_matrix(A, 0, n - 1));
  Complex d21 = det(minor_matrix(A, 1, 0));
  Complex d12 = det(minor_matrix(minor_matrix(A, 0, n - 1), 0, 0));
  Complex dM = det(A);
  double scale = std::max({std::abs(d11 * d2n), std::abs(d1n * d21), std::abs(d12 * dM), 1e-300});
  double res = std::abs(d11 * d2n - d1n * d21 - d12 * dM) / scale;
  Report r;
  r.add("Lewis Carroll identity", "lewis-carroll", res, tol);
  return r;
}

Complex wronskian_D(const SectionVec& s, const TwistProfile& Z, int k, Complex z) {
  const int N = s.N();
  if (k < 0 || k > N) throw DomainError("wronskian_D needs 0 <= k <= N");
  const Complex q = Z.q;
  Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(N, N);
  for (int c = 0; c < N - k; ++c) W(c, c) = 1.0;
  for (int j = 1; j <= k; ++j) {
    const int col = N - k + j - 1;
    for (int i = 1; i <= N; ++i) {
      Complex v = eval(s.components[i - 1], ipow(q, k - j) * z);
      for (int m = k - j; m <= k - 2; ++m) v *= Z(i, ipow(q, m) * z);
      W(i - 1, col) = v;
    }
  }
  return det(W);
}

Report wronskian_minor_consistency(const SectionVec& s, const TwistProfile& Z, int k, int samples, double tol,
                                   std::uint64_t seed) {
  std::vector<Complex> ratios;
  double dev = max_relative_deviation(samples, seed, Z.q, [&](Complex z) {
    Complex d = wronskian_D(s, Z, k, z);
    Complex m = q_plus_minor(s, Z, k, z);
    ratios.push_back(d / m);
    return std::vector<std::pair<Complex, Complex>>{{d, ratios.front() * m}};
  });
  Report r;
  r.add("D_k equals signed Q_k^+ minor, k=" + std::to_string(k), "wronskian-minor", dev, tol);
  Complex sign = ratios.empty() ? Complex(0.0) : ratios.front();
  r.data["sign"] = {sign.real(), sign.imag()};
  return r;
}

Report check_Dk_symmetry(const SectionVec& s, const TwistProfile& Z, int k, int samples, double tol,
                         std::uint64_t seed, bool enforce_prereq) {
  if (enforce_prereq) {
    for (const auto& c : s.components)
      if (!is_invariant(c, Z.q, 0, 1e-10)) throw PrereqError("section component is not z -> 1/z symmetric");
    if (!check_reflection_glN(Z, 1e-9, 20, seed + 7).all_pass())
      throw PrereqError("twist profile fails the reflection constraints");
  }
  const Complex q = Z.q;
  double dev = max_relative_deviation(samples, seed, q, [&](Complex z) {
    Complex w = 1.0 / (ipow(q, k - 1) * z);
    return std::vector<std::pair<Complex, Complex>>{{wronskian_D(s, Z, k, w), wronskian_D(s, Z, k, z)}};
  });
  Report r;
  r.add("D_k(1/(q^{k-1}z)) = D_k(z), k=" + std::to_string(k), "wronskian-reflection", dev, tol);
  return r;
}

LaurentPoly regular_singularity_P(const SingularityData& lams, int j) {
  const int N = static_cast<int>(lams.lambdas.size());
  LaurentPoly p = LaurentPoly::constant(1.0);
  // Lambda_0 = 1, so P_N = P_{N-1}
  for (int i = N - 1; i >= std::max(N - j, 1); --i) p *= lams.lambdas.at(i - 1);
  return p;
}

LaurentPoly regular_singularity_W(const SingularityData& lams, int k, Complex q) {
  const int N = static_cast<int>(lams.lambdas.size());
  if (k < 1 || k > N) throw DomainError("regular_singularity_W needs 1 <= k <= N");
  LaurentPoly w = LaurentPoly::constant(1.0);
  for (int j = 1; j <= k; ++j) w *= q_shift(regular_singularity_P(lams, j), q, j - 1);
  return w;
}

}  // namespace qoper
