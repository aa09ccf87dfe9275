#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qoper/literature.hpp"

using namespace qoper;

namespace {

// boundary functions written out case by case
Complex h_ref(int k, Complex z, const DeVegaParams& d, Complex q) {
  const int N = d.n_rank;
  const Complex bm = d.b_minus, bp = d.b_plus;
  if (d.l_minus == d.l_plus) {
    if (k != d.l_minus) return 1.0;
    const int l = k;
    return std::pow(q, l) * (bm - z) * (bp * z - std::pow(q, N - l)) /
           ((std::pow(q, l) * bm * z - 1.0) * (bp - std::pow(q, N) * z));
  }
  if (k == d.l_minus) return std::pow(q, k) * z * (bm - z) / (std::pow(q, k) * bm * z - 1.0);
  if (k == d.l_plus) return (bp * z - std::pow(q, N - k)) / (z * (bp - std::pow(q, N) * z));
  return 1.0;
}

DeVegaParams devega_params(int N, int lm, int lp, Complex bm, Complex bp) {
  DeVegaParams d;
  d.n_rank = N;
  d.l_minus = lm;
  d.l_plus = lp;
  d.b_minus = bm;
  d.b_plus = bp;
  return d;
}

}  // namespace

TEST_CASE("VW dictionary worked values") {
  SubstitutionVW sub;
  sub.q_vw = 2.0;
  sub.y = {2.0};
  sub.t = {3.0};
  sub.xi_b = 0.5;
  sub.xi_tilde_b = 1.5;
  GL2Data d = vw_map(sub, VWDictionary::Printed);
  CHECK(oracle::rel(d.q, 0.25) < 1e-15);
  CHECK(oracle::rel(d.roots[0], 8.0) < 1e-15);
  CHECK(oracle::rel(d.inhomogeneities[0], 9.0) < 1e-15);
  CHECK(oracle::rel(d.twist.mu, 0.5 * 2.0) < 1e-15);
  GL2Data c = vw_map(sub, VWDictionary::Corrected);
  CHECK(oracle::rel(c.inhomogeneities[0], 9.0 * 2.0) < 1e-15);
  CHECK(oracle::rel(c.twist.mu, 2.0 / 0.5) < 1e-15);
  sub.q_vw = 0.0;
  CHECK_THROWS_AS(vw_map(sub), DomainError);
}

TEST_CASE("VW dictionary round trips on the principal branch") {
  oracle::Rng r(60);
  for (VWDictionary dict : {VWDictionary::Printed, VWDictionary::Corrected}) {
    for (int i = 0; i < 20; ++i) {
      GL2Data d;
      d.q = r.ring(0.6, 1.5);
      d.roots = {r.ring(), r.ring()};
      d.inhomogeneities = {r.ring()};
      d.twist.mu = r.ring();
      d.twist.mu_tilde = r.ring();
      GL2Data back = vw_map(vw_inverse(d, dict), dict);
      CHECK(oracle::rel(back.q, d.q) < 1e-12);
      for (int k = 0; k < 2; ++k) CHECK(oracle::rel(back.roots[k], d.roots[k]) < 1e-12);
      CHECK(oracle::rel(back.inhomogeneities[0], d.inhomogeneities[0]) < 1e-12);
      CHECK(oracle::rel(back.twist.mu, d.twist.mu) < 1e-12);
      CHECK(oracle::rel(back.twist.mu_tilde, d.twist.mu_tilde) < 1e-12);
    }
  }
  SubstitutionVW empty;
  CHECK(vw_residual(empty).empty());
}

TEST_CASE("GL(2) solutions transport to the VW equations") {
  oracle::Rng r(61);
  for (int i = 0; i < 4; ++i) {
    BetheProblemGL2 p;
    p.q = r.ring(0.7, 1.3);
    p.inhomogeneities = {r.ring(), r.ring()};
    p.magnons = 1 + i % 2;
    p.twist.mu = r.ring();
    p.twist.mu_tilde = r.ring();
    SolveOptions opt;
    opt.seed = i;
    opt.starts = 300;
    SolveOutcome out = solve_gl2(p, opt);
    REQUIRE_FALSE(out.solutions.empty());
    for (const auto& s : out.solutions) {
      Report t = vw_transport_check(p, s.roots[0], 1e-9);
      CHECK(t.all_pass());
      CHECK(t.data.contains("printed_dictionary_residual"));
    }
    // a non-solution does not satisfy the transported equations
    std::vector<Complex> off(p.magnons, Complex(1.37, 0.41));
    CHECK_FALSE(vw_transport_check(p, off, 1e-9).all_pass());
  }
}

TEST_CASE("YNZ map, inverse and simple-pole transport") {
  SubstitutionYNZ y;
  y.eta = {0.3, 0.2};
  y.N_sites = 2;
  y.alpha_minus = {0.1, 0.3};
  y.alpha_plus = {-0.2, 0.1};
  y.beta_minus = {0.3, -0.2};
  y.beta_plus = {0.05, 0.4};
  y.eps_signs = {1, -1, 1};
  y.v = {Complex(0.2, 0.1)};
  // dictionary values written out
  BetheProblemGL2 p = ynz_problem(y);
  const Complex sq = std::exp(-y.eta);
  CHECK(oracle::rel(p.q, std::exp(-2.0 * y.eta)) < 1e-14);
  CHECK(oracle::rel(p.twist.mu, std::exp(2.0 * y.alpha_minus) / sq) < 1e-14);
  CHECK(oracle::rel(p.twist.mu_tilde, std::exp(-2.0 * y.alpha_plus) / sq) < 1e-14);
  CHECK(oracle::rel(*p.twist.b, std::exp(2.0 * y.beta_minus) / sq) < 1e-14);
  CHECK(oracle::rel(*p.twist.b_tilde, std::exp(2.0 * y.beta_plus) / sq) < 1e-14);
  REQUIRE(p.inhomogeneities.size() == 2);
  CHECK(oracle::rel(p.inhomogeneities[0], 1.0 / sq) < 1e-14);
  auto s = ynz_roots(y);
  CHECK(oracle::rel(s[0], std::exp(2.0 * y.v[0] + y.eta)) < 1e-14);
  CHECK(oracle::rel(ynz_inverse_roots(s, y.eta)[0], y.v[0]) < 1e-12);

  p.magnons = 1;
  SolveOptions opt;
  opt.starts = 300;
  SolveOutcome out = solve_gl2(p, opt);
  REQUIRE_FALSE(out.solutions.empty());
  for (const auto& sol : out.solutions) CHECK(ynz_transport_check(y, sol.roots[0], 1e-9).all_pass());
  // flipping a sign changes the boundary factor, so the same roots stop solving
  SubstitutionYNZ flipped = y;
  flipped.eps_signs = {1, 1, 1};
  CHECK_FALSE(ynz_transport_check(flipped, out.solutions[0].roots[0], 1e-9).all_pass());
}

TEST_CASE("De Vega boundary functions: branches and hyperbolic form") {
  oracle::Rng r(62);
  for (int N : {2, 3, 4})
    for (int lm = 1; lm <= N - 1; ++lm)
      for (int lp = 1; lp <= N - 1; ++lp) {
        DeVegaParams d = devega_params(N, lm, lp, r.ring(), r.ring());
        Complex q = r.ring(0.7, 1.4), z = r.ring();
        for (int k = 1; k <= N - 1; ++k) {
          CHECK(oracle::rel(h_k(k, z, d, q, N), h_ref(k, z, d, q)) < 1e-12);
          // z = e^{2 mu}, q = e^{2 gamma}, b = e^{2 xi}
          Complex gamma = std::log(q) / 2.0, mu = std::log(z) / 2.0;
          Complex xm = std::log(d.b_minus) / 2.0, xp = std::log(d.b_plus) / 2.0;
          CHECK(oracle::rel(h_k_sinh(k, mu, N, lm, lp, gamma, xm, xp), h_ref(k, z, d, q)) < 1e-10);
        }
        if (lm != lp) CHECK(std::abs(h_k(lm, d.b_minus, d, q, N)) < 1e-14);
      }
  DeVegaParams d = devega_params(4, 1, 3, 1.2, 0.7);
  CHECK(h_k(2, Complex(0.3, 0.9), d, 0.9, 4) == Complex(1.0));
  // the combined branch is the product of the single branches
  DeVegaParams same = devega_params(3, 2, 2, Complex(0.8, 0.2), Complex(1.1, -0.3));
  Complex q(0.9, 0.2), z(0.6, 0.7);
  Complex lower = std::pow(q, 2) * z * (same.b_minus - z) / (std::pow(q, 2) * same.b_minus * z - 1.0);
  Complex upper = (same.b_plus * z - q) / (z * (same.b_plus - std::pow(q, 3) * z));
  CHECK(oracle::rel(h_k(2, z, same, q, 3), lower * upper) < 1e-12);
}

TEST_CASE("De Vega dictionary round trip and the two residual forms") {
  oracle::Rng r(63);
  DeVegaData data;
  data.q = r.ring(0.7, 1.3);
  data.s = {{r.ring()}, {r.ring()}, {r.ring(), r.ring()}};
  data.b_minus = r.ring();
  data.b_plus = r.ring();
  DeVegaData back = devega_map(devega_inverse(data));
  CHECK(oracle::rel(back.q, data.q) < 1e-12);
  CHECK(oracle::rel(back.b_minus, data.b_minus) < 1e-12);
  for (size_t k = 0; k < data.s.size(); ++k)
    for (size_t i = 0; i < data.s[k].size(); ++i) CHECK(oracle::rel(back.s[k][i], data.s[k][i]) < 1e-12);
  DeVegaParams d = devega_params(3, 1, 2, data.b_minus, data.b_plus);
  SubstitutionDeVega sub = devega_inverse(data);
  CHECK_THROWS_AS(devega_residual(sub, d, {1}), DomainError);
}

TEST_CASE("N=3 De Vega solutions transport to both literature forms") {
  DeVegaParams d = devega_params(3, 1, 1, Complex(0.7, 0.3), Complex(1.2, -0.4));
  d.ratio_q_power = -1;
  const Complex q(0.8, 0.5);
  BetheProblemGLN p = devega_problem(d, q, {1, 1}, {Complex(1.3, 0.2), Complex(0.6, -0.9)});
  CHECK(p.symmetric_level_offset == 1);
  CHECK(p.Lambda.level == 3);
  SolveOptions opt;
  opt.starts = 300;
  opt.gate_certificate = false;
  SolveOutcome out = solve_glN(p, opt);
  REQUIRE_FALSE(out.solutions.empty());
  for (const auto& s : out.solutions) CHECK(devega_transport_check(p, d, s.roots, 1e-9).all_pass());
  LevelRoots off{{Complex(1.1, 0.3)}, {Complex(0.4, 1.2)}};
  CHECK_FALSE(devega_transport_check(p, d, off, 1e-9).all_pass());
}

TEST_CASE("worked N=2 example recovered up to a constant power of q") {
  DeVegaParams d = devega_params(2, 1, 1, Complex(0.7, 0.3), Complex(1.2, -0.4));
  const Complex q(0.8, 0.5);
  Report rep = devega_example_check(d, q, 50, 1e-10, 3);
  CHECK(rep.all_pass());
  // fit_q_power recovers a planted power
  RationalFn ref(LaurentPoly({{1, 1.0}, {0, Complex(0.3, 0.2)}}), LaurentPoly({{2, 1.0}, {0, -2.0}}));
  RationalFn ours = RationalFn(LaurentPoly::constant(std::pow(q, 3))) * ref;
  QPowerFit fit = fit_q_power(ours, ref, q, 30, 1);
  CHECK(fit.power == 3);
  CHECK(fit.mismatch < 1e-12);
  CHECK(fit.constancy < 1e-12);
  CHECK_THROWS_AS(fit_q_power(ours, ref, q, 0), DomainError);
  // the worked example components written out
  TwistProfile ex = devega_example_n2(d.b_minus, d.b_plus, q);
  Complex z(0.9, -0.6);
  Complex den = q * q * z * z - 1.0;
  CHECK(oracle::rel(ex(1, z), (d.b_minus * q * z - 1.0) * (q * q * z - d.b_plus) / den) < 1e-13);
  CHECK(oracle::rel(ex(2, z), -q * (d.b_minus - q * z) * (d.b_plus * z - 1.0) / den) < 1e-13);
}
