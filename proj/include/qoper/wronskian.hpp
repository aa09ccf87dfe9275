#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qoper/laurent.hpp"
#include "qoper/report.hpp"
#include "qoper/twist.hpp"

namespace qoper {

struct PrereqError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SectionVec {
  std::vector<LaurentPoly> components;  // s_1 ... s_N
  int N() const { return static_cast<int>(components.size()); }
};

struct EvaluatedMatrix {
  int dim = 0;
  Eigen::MatrixXcd entries;
  Complex at = 0.0;
};

struct SingularityData {
  std::vector<LaurentPoly> lambdas;  // Lambda_1 ... Lambda_N (Lambda_N = Lambda)
};

// Rows are 1-based component indices. Column j (1..k) of row i is
//   xi_i(q^{k-2} z) ... xi_i(q^{k-j} z) * s_i(q^{k-j} z)
// so the first column carries no twist factors.
EvaluatedMatrix build_M_rows(const SectionVec& s, const TwistProfile& Z, int k, const std::vector<int>& rows,
                             Complex z);
// rows N-k+1 .. N
EvaluatedMatrix build_M(const SectionVec& s, const TwistProfile& Z, int k, Complex z);

Complex det(const EvaluatedMatrix& M);
Complex det(const Eigen::MatrixXcd& M);
// removes one row and one column (0-based); dim 1 -> empty (det 1)
Eigen::MatrixXcd minor_matrix(const Eigen::MatrixXcd& M, int row, int col);

Complex q_plus_minor(const SectionVec& s, const TwistProfile& Z, int k, Complex z);
// rows N-k, N-k+2, ..., N
Complex q_minus_minor(const SectionVec& s, const TwistProfile& Z, int k, Complex z);

Report lewis_carroll_check(const EvaluatedMatrix& M, double tol);

// det[e_1, ..., e_{N-k}, c_1, ..., c_k] with c_j the iterated-twist section values
Complex wronskian_D(const SectionVec& s, const TwistProfile& Z, int k, Complex z);
// sign D_k / Q_k^+ observed at sample points (expected constant)
Report wronskian_minor_consistency(const SectionVec& s, const TwistProfile& Z, int k, int samples, double tol,
                                   std::uint64_t seed = 0);

// D_k(1/(q^{k-1} z)) = D_k(z). With enforce_prereq the section must be
// level-0 symmetric and Z must pass check_reflection_glN (else PrereqError).
Report check_Dk_symmetry(const SectionVec& s, const TwistProfile& Z, int k, int samples, double tol,
                         std::uint64_t seed = 0, bool enforce_prereq = true);

// P_j(z) = Lambda_{N-1} ... Lambda_{N-j}(z); W_k = prod_{j=1}^k P_j(q^{j-1} z)
LaurentPoly regular_singularity_P(const SingularityData& lams, int j);
LaurentPoly regular_singularity_W(const SingularityData& lams, int k, Complex q);

}  // namespace qoper
