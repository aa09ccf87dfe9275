#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qoper/laurent.hpp"
#include "qoper/report.hpp"

namespace qoper {

struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Diagonal q-connection diag(xi_1, ..., xi_N).
struct TwistProfile {
  Complex q = 1.0;
  std::vector<RationalFn> xi;

  int N() const { return static_cast<int>(xi.size()); }
  // 1-based component access
  Complex operator()(int i, Complex z) const { return rational_eval(xi.at(i - 1), z); }
};

enum class GL2Kind { ConstantAsymptotics, SimplePoleAtZero };

struct GL2TwistParams {
  Complex mu = 1.0;
  Complex mu_tilde = 1.0;
  std::optional<Complex> b;
  std::optional<Complex> b_tilde;
  GL2Kind kind = GL2Kind::ConstantAsymptotics;
};

struct DeVegaParams {
  int n_rank = 2;
  int l_minus = 1;
  int l_plus = 1;
  Complex b_minus = 1.0;
  Complex b_plus = 1.0;
  Complex mu_free = 1.0;  // free zero of the seed when l_minus != l_plus
  bool pole_at_zero = false;
  Complex pole_b = 1.0;  // extra zeros -b, -b_tilde of the simple-pole seed
  Complex pole_b_tilde = 1.0;
  // power c in the ratio xi_{N-k+1}(z)/xi_{N-k}(qz) = q^c h(...) (...)
  int ratio_q_power = 1;
};

// Max relative deviation |l - r| / max(|l|,|r|) of the pairs returned by
// `pairs` over `samples` annulus points; points hitting a pole are redrawn.
double max_relative_deviation(int samples, std::uint64_t seed, Complex q,
                              const std::function<std::vector<std::pair<Complex, Complex>>(Complex)>& pairs);

TwistProfile build_gl2_constant(const GL2TwistParams& params, Complex q);
TwistProfile build_gl2_simple_pole(const GL2TwistParams& params, Complex q);
TwistProfile build_gl2(const GL2TwistParams& params, Complex q);

// xi_1(1/(q^p z)) = -xi_2(z) and xi_2(1/(q^p z)) = -xi_1(z); p = 1 by default
Report check_reflection_gl2(const TwistProfile& Z, double tol, int samples, std::uint64_t seed = 0,
                            int reflect_power = 1);
// A(z) A(1/(qz)) = -det A(1/(qz)) * 1, componentwise for diagonal A
Report check_det_reflection_gl2(const TwistProfile& Z, double tol, int samples, std::uint64_t seed = 0);
Report check_reflection_glN(const TwistProfile& Z, double tol, int samples, std::uint64_t seed = 0);

// xi_1 = xi_2 = a (z - 1/z) prod (z - c_j)(1/z - c_j), xi_3(z) = xi_1(qz)
TwistProfile build_gl3_example(Complex a, const std::vector<Complex>& c, Complex q);
// Regular semisimple variant: xi_2 = xi_1 / f, xi_3(z) = f(z) xi_1(qz) with
// f(z) = (z - r)/(1/(qz) - r), so that f(z) f(1/(qz)) = 1.
TwistProfile build_gl3_example(Complex a, const std::vector<Complex>& c, Complex q, Complex ratio_root);
// N = 4 profile satisfying all reflection constraints:
//   f = o(z) o(qz) o(z/q) with o(z) = z - 1/z,
//   xi_1 = z^{-3} (z^2-1)^2 (z^2-q^2) / q, xi_2 = f,
//   xi_3 = f(qz) g(z), xi_4 = f(z) / g(z), g(z) = (z - r)/(1/(qz) - r), all times `scale`.
TwistProfile build_gl4_example(Complex scale, Complex ratio_root, Complex q);

Report check_gl3_determinant_relation(const TwistProfile& Z, double tol, int samples, std::uint64_t seed = 0);
Report check_gl4_third_constraint(const TwistProfile& Z, double tol, int samples, std::uint64_t seed = 0);

RationalFn devega_seed(const DeVegaParams& params, Complex q);
TwistProfile build_devega(const DeVegaParams& params, Complex q);

struct Asymptote {
  int order_zero = 0;  // xi ~ coeff_zero * z^order_zero as z -> 0
  Complex coeff_zero = 0.0;
  int order_inf = 0;   // xi ~ coeff_inf * w^order_inf as w = 1/z -> 0
  Complex coeff_inf = 0.0;
};

std::vector<Asymptote> asymptotics(const TwistProfile& Z);
// Expected (order_zero, order_inf) per component for a De Vega profile.
std::vector<std::pair<int, int>> devega_expected_orders(const DeVegaParams& params);

Report regular_semisimple_check(const TwistProfile& Z, int samples, std::uint64_t seed = 0);

}  // namespace qoper
