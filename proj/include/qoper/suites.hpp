#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qoper/bethe.hpp"
#include "qoper/report.hpp"
#include "qoper/xxx_eps.hpp"

namespace qoper {

// Shared knobs for the property suites. Unset tolerances use the suite defaults.
struct SuiteOptions {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::optional<int> samples;
  int starts = 1000;
  int lattice_depth = 5;
  bool exclude_self_term = false;
};

// Twist reflection and det identity for random constant and simple-pole GL(2) profiles.
Report suite_reflection(const SuiteOptions& opt);
// Level invariance of expanded Lambda and Q+, plus the additive analogs.
Report suite_symmetry(const SuiteOptions& opt);
Report suite_lewis_carroll(const SuiteOptions& opt);
// Minor/Wronskian agreement and D_k symmetry for N = 2, 3, 4.
Report suite_wronskian(const SuiteOptions& opt);
// laurent/twist/wronskian properties: the four suites above merged.
Report identity_suite(const SuiteOptions& opt);

struct SolvedGL2 {
  BetheProblemGL2 problem;
  SolveOutcome outcome;
};
// Random constant-twist GL(2) problems solved end to end; `solved` receives the instances.
Report suite_gl2_end_to_end(const SuiteOptions& opt, std::vector<SolvedGL2>* solved = nullptr);
// N = 3 De Vega instance with p = (1, 1).
Report suite_glN_devega(const SuiteOptions& opt);
// VW transport of `solved`, YNZ transport of simple-pole solutions, N = 2 De Vega example fit.
Report suite_literature(const SuiteOptions& opt, const std::vector<SolvedGL2>& solved);
// phi reflection identity, one-magnon oracle match, Frassek reduction.
Report suite_xxx(const SuiteOptions& opt);

// One-magnon solution sets against the companion-matrix oracle: every
// nondegenerate oracle root is found and every solution is an oracle root.
Report oracle_comparison_gl2(const BetheProblemGL2& p, const SolveOutcome& out, int depth, double tol);
Report oracle_comparison_eps(const EpsProblem& p, const SolveOutcome& out, int depth, double tol,
                             EpsForm form = EpsForm::Explicit);

// Roots of the Frassek equations at eps = 1 by damped Newton from random starts.
std::vector<Complex> frassek_solve(int L, int magnons, Complex p_b, Complex q_b, std::uint64_t seed);

}  // namespace qoper
