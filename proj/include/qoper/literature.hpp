#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qoper/bethe.hpp"
#include "qoper/laurent.hpp"
#include "qoper/report.hpp"
#include "qoper/twist.hpp"

namespace qoper {

// ---- De Vega boundary functions ----

// h^(k) in exponential variables, as a rational function of z (N = params.n_rank).
RationalFn devega_h(int k, const DeVegaParams& params, Complex q);
Complex h_k(int k, Complex z, const DeVegaParams& params, Complex q, int N);
// hyperbolic form in the rapidity mu, with q = e^{2 gamma}, b = e^{2 xi}
Complex h_k_sinh(int k, Complex mu, int N, int l_minus, int l_plus, Complex gamma, Complex xi_minus,
                 Complex xi_plus);

// ---- Vlaar-Weston dictionary ----

struct SubstitutionVW {
  Complex q_vw = 1.0;
  std::vector<Complex> y;  // Bethe roots
  std::vector<Complex> t;  // inhomogeneities
  Complex xi_b = 1.0;
  Complex xi_tilde_b = 1.0;
};

struct GL2Data {
  Complex q = 1.0;
  std::vector<Complex> roots;
  std::vector<Complex> inhomogeneities;
  GL2TwistParams twist;
};

enum class VWDictionary {
  Printed,    // s = y^2/sqrt(q), a = t^2, mu = xi/sqrt(q), q := q_vw^{-2}
  Corrected,  // s = y^2/sqrt(q), a = t^2/sqrt(q), mu = 1/(sqrt(q) xi)
};

// sqrt(q) is taken as 1/q_vw throughout.
GL2Data vw_map(const SubstitutionVW& sub, VWDictionary dict = VWDictionary::Printed);
// Inverse on the principal branch: q_vw = 1/sqrt(q), y = sqrt(s sqrt(q)), ...
SubstitutionVW vw_inverse(const GL2Data& data, VWDictionary dict = VWDictionary::Corrected);
// Displayed open Bethe equations minus 1, per root.
std::vector<Complex> vw_residual(const SubstitutionVW& sub, bool exclude_self_term = false);

// ---- Yang-Nepomechie-Zhang dictionary ----

struct SubstitutionYNZ {
  Complex eta = 0.1;
  std::vector<Complex> v;  // Bethe roots
  int N_sites = 0;
  Complex alpha_minus = 0.0, alpha_plus = 0.0, beta_minus = 0.0, beta_plus = 0.0;
  std::array<int, 3> eps_signs{1, 1, 1};
};

Complex ynz_H2(Complex z, const SubstitutionYNZ& sub);
Complex ynz_Q(Complex z, const SubstitutionYNZ& sub);
// H2(v)/H2(-v-eta) + Q(v+eta)/Q(v-eta) per root
std::vector<Complex> ynz_residual(const SubstitutionYNZ& sub);
// relative form |A + B| / max(|A|, |B|)
std::vector<double> ynz_relative_residual(const SubstitutionYNZ& sub);
// q = e^{-2 eta}, s = e^{2v + eta}, mu = e^{2 alpha_-}/sqrt(q), mu_tilde = e^{2 e2 alpha_+}/sqrt(q),
// b = e^{2 e1 beta_-}/sqrt(q), b_tilde = e^{2 e3 beta_+}/sqrt(q), a = 1/sqrt(q) (N_sites times); sqrt(q) = e^{-eta}
BetheProblemGL2 ynz_problem(const SubstitutionYNZ& sub);
std::vector<Complex> ynz_roots(const SubstitutionYNZ& sub);
// v = (log s - eta)/2
std::vector<Complex> ynz_inverse_roots(const std::vector<Complex>& s, Complex eta);

// ---- De Vega dictionary ----

struct SubstitutionDeVega {
  Complex gamma = 0.1;
  std::vector<std::vector<Complex>> mu_roots;  // levels 1..N (level N may be empty)
  Complex xi_minus = 0.0, xi_plus = 0.0;
};

struct DeVegaData {
  Complex q = 1.0;
  std::vector<std::vector<Complex>> s;  // levels 1..N
  Complex b_minus = 1.0, b_plus = 1.0;
};

DeVegaData devega_map(const SubstitutionDeVega& sub);
SubstitutionDeVega devega_inverse(const DeVegaData& data);

// Exponential-variable form per (k, i): lhs / rhs - 1.
std::vector<Complex> devega_residual(const SubstitutionDeVega& sub, const DeVegaParams& params,
                                     const std::vector<int>& p, bool exclude_self_term = false);
// Hyperbolic form with the j != i magnon product: lhs / rhs - 1.
std::vector<Complex> devega_residual_sinh(const SubstitutionDeVega& sub, const DeVegaParams& params,
                                          const std::vector<int>& p);
// Level-N roots of the De Vega data become Lambda (level N) of a GL(N) problem
// with symmetric_level_offset = 1 and the build_devega twist.
BetheProblemGLN devega_problem(const DeVegaParams& params, Complex q, const std::vector<int>& magnons,
                               const std::vector<Complex>& level_N_roots);

// The worked N = 2 example: xi_1 = (b_- q z - 1)(q^2 z - b_+)/(q^2 z^2 - 1),
// xi_2 = -q (b_- - q z)(b_+ z - 1)/(q^2 z^2 - 1).
TwistProfile devega_example_n2(Complex b_minus, Complex b_plus, Complex q);

struct QPowerFit {
  int power = 0;
  double mismatch = 0.0;   // max |ratio - q^power| / |q^power|
  double constancy = 0.0;  // max |ratio(z) - ratio(z0)| / |ratio(z0)|
};
// Fits ours(z)/reference(z) = q^m with integer m in [-6, 6].
QPowerFit fit_q_power(const RationalFn& ours, const RationalFn& reference, Complex q, int samples,
                      std::uint64_t seed = 0);
// Compares build_devega at N = 2 with the worked example component-wise.
Report devega_example_check(const DeVegaParams& params, Complex q, int samples, double tol, std::uint64_t seed = 0);

// ---- transport checks ----

Report vw_transport_check(const BetheProblemGL2& p, const std::vector<Complex>& roots, double tol);
Report ynz_transport_check(const SubstitutionYNZ& sub, const std::vector<Complex>& roots, double tol);
// solution of the GL(N) problem built by devega_problem, mapped to rapidities
Report devega_transport_check(const BetheProblemGLN& problem, const DeVegaParams& params, const LevelRoots& roots,
                              double tol);

}  // namespace qoper
