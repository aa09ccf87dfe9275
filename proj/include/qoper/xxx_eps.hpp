#pragma once

#include <utility>
#include <vector>

#include "qoper/bethe.hpp"
#include "qoper/laurent.hpp"
#include "qoper/report.hpp"

namespace qoper {

// Ordinary polynomial, coefficients by ascending degree.
class TaylorPoly {
 public:
  TaylorPoly() = default;
  explicit TaylorPoly(std::vector<Complex> c);
  static TaylorPoly constant(Complex c);
  // a z + b
  static TaylorPoly linear(Complex a, Complex b);

  const std::vector<Complex>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Complex operator()(Complex z) const;
  double norm_inf() const;

 private:
  void trim();
  std::vector<Complex> c_;
};

TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b);
TaylorPoly operator-(const TaylorPoly& a, const TaylorPoly& b);
TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b);
TaylorPoly operator*(Complex c, const TaylorPoly& a);
// p(a z + b)
TaylorPoly compose_linear(const TaylorPoly& p, Complex a, Complex b);
double relative_distance(const TaylorPoly& a, const TaylorPoly& b);
LaurentPoly to_laurent(const TaylorPoly& p);

// p(z + m eps)
TaylorPoly eps_shift(const TaylorPoly& p, Complex eps, int m);
// p(-z), or p(-z - eps) when shifted
TaylorPoly reflect_additive(const TaylorPoly& p, Complex eps, bool shifted);

struct EpsProblem {
  Complex eps = 1.0;
  Complex m_b = 0.0;
  Complex m_b_tilde = 0.0;
  std::vector<Complex> inhomogeneities;
  int magnons = 0;
};

// prod (z - s)(-z - s)
TaylorPoly eps_Q(const std::vector<Complex>& roots);
// prod (z - a)(-z - eps - a)
TaylorPoly eps_Lambda(const std::vector<Complex>& a, Complex eps);

// phi1 = (2z+2eps+1)(z+eps+m-1/2)(z+eps+mt-1/2), phi2 = (2z-1)(z-m+1/2)(z-mt+1/2)
std::pair<TaylorPoly, TaylorPoly> build_phi_polys(const EpsProblem& p);
std::pair<RationalFn, RationalFn> build_phi(const EpsProblem& p);

// Explicit product form minus 1 per root.
std::vector<Complex> residual_eps(const std::vector<Complex>& roots, const EpsProblem& p,
                                  bool exclude_self_term = false);
// -phi1(s)/phi2(s-eps) Q(s+eps)/Q(s-eps) Lambda(s-eps)/Lambda(s) - 1 per root.
std::vector<Complex> residual_eps_abstract(const std::vector<Complex>& roots, const EpsProblem& p);

enum class EpsForm { Explicit, Abstract };

std::vector<ClearedEq> cleared_eps(const std::vector<Complex>& roots, const EpsProblem& p,
                                   EpsForm form = EpsForm::Explicit);
TaylorPoly cleared_univariate_eps(const EpsProblem& p, EpsForm form = EpsForm::Explicit);
std::vector<Complex> brute_force_univariate_eps(const EpsProblem& p, EpsForm form = EpsForm::Explicit,
                                                double filter_tol = 1e-8);
std::vector<Complex> taylor_roots(const TaylorPoly& p);

// t - t' or t + t' in eps Z (|m| <= depth), relative tolerance 1e-8
Report additive_nondegeneracy(const std::vector<Complex>& roots, const EpsProblem& p, int depth);

struct AdditiveQminusFit {
  TaylorPoly Qm;
  double fit_residual = 0.0;
  double fresh_residual = 0.0;
};
// Least squares for phi_b(z) Qp(z) Qm(z+eps) - phi_a(z) Qm(z) Qp(z+eps) = rhs(z), deg Qm <= degree_bound.
AdditiveQminusFit recover_Qminus_additive(Complex eps, const TaylorPoly& Qp, const TaylorPoly& phi_a,
                                          const TaylorPoly& phi_b, const TaylorPoly& rhs, int degree_bound,
                                          std::uint64_t seed = 0);
Report eps_certificate(const std::vector<Complex>& roots, const EpsProblem& p, double tol, std::uint64_t seed = 0);

// Gated on residual and nondegeneracy; eps_certificate is reported separately
// because the additive QQ system has no polynomial Q- in general.
SolveOutcome solve_eps(const EpsProblem& p, const SolveOptions& opt = {}, EpsForm form = EpsForm::Explicit);

// Cleared residual and nondegeneracy; the QQ certificate is recorded in data only.
Report verify_solution(const EpsProblem& p, const BetheSolution& s, const SolveOptions& opt = {},
                       EpsForm form = EpsForm::Explicit);

// Frassek-Szecsenyi residual with z_k = s_k - 1/2.
std::vector<Complex> frassek_residual(const std::vector<Complex>& roots, int L, Complex p_b, Complex q_b,
                                      bool exclude_self_term = false);
// Compares the Frassek residual with residual_eps at eps = 1, a_j = 1/2. The
// boundary dictionary (m, mt) and the k = i convention of each form are fitted
// by matching the one-body factors; the chosen convention is recorded in data.
Report frassek_match(const std::vector<Complex>& roots, int L, Complex p_b, Complex q_b, double tol = 1e-9);
// Reduction through the abstract form: eps = 1, a_j = -1/2, m = -1, mt = -q_b, with p_b = -1.
Report frassek_match_abstract(const std::vector<Complex>& roots, int L, Complex q_b, double tol = 1e-9);

}  // namespace qoper
