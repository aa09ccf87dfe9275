#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qoper/laurent.hpp"
#include "qoper/report.hpp"
#include "qoper/twist.hpp"

namespace qoper {

struct RankError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QQInstanceGL2 {
  Complex q = 1.0;
  LaurentPoly Qp = LaurentPoly::constant(1.0);
  LaurentPoly Qm = LaurentPoly::constant(1.0);
  RationalFn xi1, xi2;
  LaurentPoly Lambda = LaurentPoly::constant(1.0);
};

struct QQInstanceGLN {
  Complex q = 1.0;
  int N = 2;
  std::vector<LaurentPoly> Qp;  // Q_1^+ ... Q_N^+, with Q_N^+ = Lambda
  std::vector<LaurentPoly> Qm;  // Q_1^- ... Q_{N-1}^-
  TwistProfile Z;

  // Q_k^+ with Q_0^+ = 1
  const LaurentPoly& plus(int k) const;
};

// residual together with the largest summand magnitude at the same point
struct ScaledResidual {
  Complex value = 0.0;
  double scale = 0.0;
  double relative() const;
};

// xi2(z) Q+(z) Q-(qz) - xi1(z) Q-(z) Q+(qz) - Lambda(z)
Complex gl2_residual(const QQInstanceGL2& inst, Complex z);
ScaledResidual gl2_residual_scaled(const QQInstanceGL2& inst, Complex z);

// xi_{N-k+1}(q^{k-1}z) Q_k^+(z) Q_k^-(qz) - xi_{N-k}(q^{k-1}z) Q_k^+(qz) Q_k^-(z) - Q_{k-1}^+(qz) Q_{k+1}^+(z)
Complex glN_residual(const QQInstanceGLN& inst, int k, Complex z);
ScaledResidual glN_residual_scaled(const QQInstanceGLN& inst, int k, Complex z);

// max relative residual over sample points
Report qq_check_gl2(const QQInstanceGL2& inst, int samples, double tol, std::uint64_t seed = 0);
Report qq_check_glN(const QQInstanceGLN& inst, int samples, double tol, std::uint64_t seed = 0);

struct QminusFit {
  LaurentPoly Qm;
  double fit_residual = 0.0;    // max relative residual at the fit points
  double fresh_residual = 0.0;  // same at points not used in the fit
  int unknowns = 0;
  double condition = 0.0;  // sigma_max / sigma_min of the equilibrated system
};

// radius(Qp) + radius(rhs)
int default_degree_bound(const LaurentPoly& Qp, const LaurentPoly& rhs);

// Least-squares solve of xi_b(z) Qp(z) Qm(qz) - xi_a(z) Qm(z) Qp(qz) = rhs(z) for Qm
// supported on [-degree_bound, degree_bound]. Throws RankError on a rank-deficient system.
QminusFit recover_Qminus(Complex q, const LaurentPoly& Qp, const RationalFn& xi_a, const RationalFn& xi_b,
                         const LaurentPoly& rhs, int degree_bound, std::uint64_t seed = 0);

struct RootFamily {
  std::string label;
  std::vector<Complex> values;
  // Reference data (singularities, twist zeros) is only tested against
  // non-reference families; non-reference values are also tested against
  // each other and against their own inverse lattice (t^2 = q^m).
  bool reference = false;
};

// Flags pairs with q^m t = t'^{+-1}, |m| <= depth, relative tolerance 1e-8.
Report nondegeneracy_check(const std::vector<RootFamily>& families, Complex q, int lattice_depth);
// Plain form: every family is a root family.
Report nondegeneracy_check(const std::vector<std::vector<Complex>>& families, Complex q, int lattice_depth);

}  // namespace qoper
