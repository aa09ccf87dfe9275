#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qoper/laurent.hpp"
#include "qoper/qq.hpp"
#include "qoper/report.hpp"
#include "qoper/twist.hpp"

namespace qoper {

struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateProblem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BetheProblemGL2 {
  Complex q = 1.0;
  std::vector<Complex> inhomogeneities;  // roots a_l of Lambda
  int magnons = 0;
  GL2TwistParams twist;
  Complex gamma = 1.0;  // Lambda scale
};

struct BetheProblemGLN {
  Complex q = 1.0;
  int N = 2;
  std::vector<int> magnons;  // p_1 ... p_{N-1}
  SymmetricFactoredPoly Lambda;
  TwistProfile Z;
  // Q_k^+ is symmetric at level k - 1 + offset
  int symmetric_level_offset = 0;
};

// Lambda(z) = gamma prod (z - a_l)(1/(qz) - a_l)
LaurentPoly lambda_poly(const BetheProblemGL2& p);
TwistProfile twist_profile(const BetheProblemGL2& p);

// One Bethe equation written as lhs = rhs with all denominators cleared.
struct ClearedEq {
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  // |lhs - rhs| / max(|lhs|, |rhs|)
  double relative() const;
};
using ClearedSystem = std::function<std::vector<ClearedEq>(const std::vector<Complex>&)>;

// [-xi1(s)/xi2(s/q)] [Q+(qs)/Q+(s/q)] [Lambda(s/q)/Lambda(s)] - 1 per root
std::vector<Complex> residual_gl2_general(const std::vector<Complex>& roots, const LaurentPoly& Qp,
                                          const LaurentPoly& Lambda, const RationalFn& xi1, const RationalFn& xi2,
                                          Complex q);
std::vector<ClearedEq> cleared_gl2_general(const std::vector<Complex>& roots, const LaurentPoly& Qp,
                                           const LaurentPoly& Lambda, const RationalFn& xi1, const RationalFn& xi2,
                                           Complex q);
// Same system with Q+ and Lambda built from the problem (Q+ at level 0).
std::vector<ClearedEq> cleared_gl2(const std::vector<Complex>& roots, const BetheProblemGL2& p);
std::vector<Complex> residual_gl2(const std::vector<Complex>& roots, const BetheProblemGL2& p);

// Explicit product forms: constant-asymptotics twists and simple-pole twists.
std::vector<Complex> residual_gl2_diag(const std::vector<Complex>& roots, const BetheProblemGL2& p,
                                       bool exclude_self_term = false);
std::vector<Complex> residual_gl2_full(const std::vector<Complex>& roots, const BetheProblemGL2& p,
                                       bool exclude_self_term = false);

using LevelRoots = std::vector<std::vector<Complex>>;  // roots[k-1] = level k

// Q_k^+ evaluated from roots (Q_0 = 1, Q_N = Lambda)
Complex glN_Q(const LevelRoots& roots, const BetheProblemGLN& p, int k, Complex z);
LaurentPoly glN_Q_poly(const LevelRoots& roots, const BetheProblemGLN& p, int k);

// -1 - [xi_{N-k+1}(q^{k-2}s)/xi_{N-k}(q^{k-1}s)] [Q_{k-1}(qs) Q_k(s/q) Q_{k+1}(s)] / [Q_{k-1}(s) Q_k(qs) Q_{k+1}(s/q)]
std::vector<Complex> residual_glN(const LevelRoots& roots, const BetheProblemGLN& p);
std::vector<ClearedEq> cleared_glN(const LevelRoots& roots, const BetheProblemGLN& p);
// Symmetric product form with q^{p_k} prefactors; needs symmetric_level_offset = 0.
std::vector<Complex> residual_glN_explicit(const LevelRoots& roots, const BetheProblemGLN& p,
                                           bool exclude_self_term = false);

struct NewtonResult {
  std::vector<Complex> x;
  double residual = INFINITY;  // max relative cleared residual
  int iterations = 0;
  bool converged = false;
};

// Damped Newton with a central-difference Jacobian; step halving (up to 30)
// until the frozen-weight residual norm decreases.
NewtonResult damped_newton(const ClearedSystem& F, std::vector<Complex> x0, double tol = 1e-12,
                           int max_iter = 200);

struct SolveOptions {
  std::uint64_t seed = 0;
  int starts = 50;
  double tol = 1e-12;
  int max_iter = 200;
  int lattice_depth = 5;
  double certificate_tol = 1e-9;
  // when false, QQ certificates are reported but do not reject solutions (GL(N) solver)
  bool gate_certificate = true;
};

struct BetheSolution {
  LevelRoots roots;
  double residual_norm = 0.0;
  int iterations = 0;
  Report nondegeneracy;
  Report certificate;
  bool canonical = true;  // roots stored as canonical representatives
};

struct SolveOutcome {
  std::vector<BetheSolution> solutions;
  int starts = 0;
  int converged = 0;
  int duplicates = 0;
  int rejected_degenerate = 0;
  int rejected_certificate = 0;
  int rejected_spurious = 0;  // cleared solutions that fail the rational form
  std::vector<std::string> notes;
};

// Canonical representative of {t, 1/(q^level t)}: the one of larger modulus.
Complex canonical_root(Complex t, Complex q, int level);
// Canonical form: each root canonicalized, each level sorted.
LevelRoots canonicalize(const LevelRoots& roots, Complex q, const std::vector<int>& levels);
bool same_solution(const LevelRoots& a, const LevelRoots& b, double tol = 1e-8);

// Start vectors: seeds near q^{+-1/2} a_l, on the unit circle, and on the annulus.
std::vector<Complex> start_vector(int count, const std::vector<Complex>& anchors, Complex q, std::uint64_t seed,
                                  int start_index);

// Generic multi-start driver over flattened unknowns; `levels` lists the
// symmetric level of each nesting level and `sizes` the root counts.
struct MultiStartSpec {
  ClearedSystem system;
  std::vector<int> sizes;
  std::vector<int> levels;
  std::vector<Complex> anchors;
  Complex q = 1.0;
  // returns the certificate report for a candidate (in canonical form)
  std::function<Report(const LevelRoots&)> certify;
  // when false the certificate is recorded but does not reject candidates
  bool certificate_gates = true;
  std::function<Report(const LevelRoots&)> nondegeneracy;
  // max |rational residual| at a candidate; candidates above 1e-8 (or at a pole) are
  // artifacts of clearing denominators
  std::function<double(const LevelRoots&)> rational_residual;
  // optional custom canonical form (defaults to the reflection z -> 1/(q^level z))
  std::function<LevelRoots(const LevelRoots&)> canonical;
};
SolveOutcome multi_start_solve(const MultiStartSpec& spec, const SolveOptions& opt);

Report gl2_nondegeneracy(const std::vector<Complex>& roots, const BetheProblemGL2& p, int depth);
Report gl2_certificate(const std::vector<Complex>& roots, const BetheProblemGL2& p, double tol,
                       std::uint64_t seed = 0);
Report glN_nondegeneracy(const LevelRoots& roots, const BetheProblemGLN& p, int depth);
Report glN_certificate(const LevelRoots& roots, const BetheProblemGLN& p, double tol, std::uint64_t seed = 0);

SolveOutcome solve_gl2(const BetheProblemGL2& p, const SolveOptions& opt = {});
SolveOutcome solve_glN(const BetheProblemGLN& p, const SolveOptions& opt = {});

// Roots of a Laurent polynomial (nonzero roots only) via the companion matrix.
std::vector<Complex> laurent_roots(const LaurentPoly& p);
// p(c z) as a Laurent polynomial in z
LaurentPoly scale_argument(const LaurentPoly& p, Complex c);

// Single-magnon oracle: cleared univariate polynomial, companion roots,
// spurious roots filtered by the rational residual.
LaurentPoly cleared_univariate_gl2(const BetheProblemGL2& p);
std::vector<Complex> brute_force_univariate(const BetheProblemGL2& p, double filter_tol = 1e-8);

Report verify_solution(const BetheProblemGL2& p, const BetheSolution& s, const SolveOptions& opt = {});
Report verify_solution(const BetheProblemGLN& p, const BetheSolution& s, const SolveOptions& opt = {});

}  // namespace qoper
