#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qoper/bethe.hpp"
#include "qoper/laurent.hpp"
#include "qoper/literature.hpp"
#include "qoper/qq.hpp"
#include "qoper/twist.hpp"
#include "qoper/xxx_eps.hpp"

namespace qoper {

using json = nlohmann::json;

// Schema violation; `field` is a JSON-pointer style path to the offending value.
struct InputError : std::runtime_error {
  InputError(std::string field, const std::string& msg);
  std::string field;
};

// Parses text, reporting line/column of syntax errors as InputError.
json parse_json_text(const std::string& text, const std::string& origin = "<input>");
json read_json_file(const std::string& path);

// complex numbers are [re, im]; a bare number is accepted on input
json to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& field);
json to_json(const std::vector<Complex>& v);
std::vector<Complex> complex_list_from_json(const json& j, const std::string& field);

json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j, const std::string& field);
json to_json(const RationalFn& f);
RationalFn rational_from_json(const json& j, const std::string& field);
json to_json(const SymmetricFactoredPoly& f);
SymmetricFactoredPoly symmetric_from_json(const json& j, const std::string& field);
json to_json(const TwistProfile& Z);
TwistProfile twist_from_json(const json& j, const std::string& field);

json to_json(const GL2TwistParams& t);
GL2TwistParams gl2_twist_from_json(const json& j, const std::string& field);
json to_json(const DeVegaParams& d);
DeVegaParams devega_params_from_json(const json& j, const std::string& field, int n_rank);

json to_json(const BetheProblemGL2& p);
BetheProblemGL2 gl2_problem_from_json(const json& j, const std::string& field = "");
json to_json(const EpsProblem& p);
EpsProblem eps_problem_from_json(const json& j, const std::string& field = "");

// GL(N) problem with the De Vega parameters it was built from, if any.
struct GLNProblemInput {
  BetheProblemGLN problem;
  std::optional<DeVegaParams> devega;
};
json to_json(const GLNProblemInput& p);
GLNProblemInput gln_problem_from_json(const json& j, const std::string& field = "");

// Tagged union over the three problem schemas ("type": gl2 | gln | xxx).
struct ProblemInput {
  std::string type;
  BetheProblemGL2 gl2;
  GLNProblemInput gln;
  EpsProblem xxx;
};
ProblemInput problem_from_json(const json& j, const std::string& field = "");
json to_json(const ProblemInput& p);

json to_json(const QQInstanceGL2& inst);
QQInstanceGL2 qq_gl2_from_json(const json& j, const std::string& field = "");
json to_json(const QQInstanceGLN& inst);
QQInstanceGLN qq_gln_from_json(const json& j, const std::string& field = "");

json to_json(const LevelRoots& roots);
LevelRoots level_roots_from_json(const json& j, const std::string& field);
// {"roots", "residual_norm", "iterations", "nondegeneracy", "certificate"}
json to_json(const BetheSolution& s);
json to_json(const SolveOutcome& out);

json to_json(const SubstitutionYNZ& sub);
SubstitutionYNZ ynz_from_json(const json& j, const std::string& field);

}  // namespace qoper
