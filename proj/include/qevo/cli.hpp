#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qevo/linalg.hpp"
#include "qevo/scenario.hpp"

namespace qevo::cli {

struct Overrides {
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<double> step;
  std::optional<long> oracle_steps;
};

void apply(const Overrides& o, ScenarioConfig& c);

nlohmann::json matrix_to_json(const CMatrix& m);
/// Accepts a square array of numbers or [re, im] pairs, optionally wrapped as {"matrix": ...}.
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json basis_document(int dimension);
nlohmann::json decompose_document(const CMatrix& a, int dimension);
nlohmann::json expmap_document(const RVector& r, int dimension);
nlohmann::json check_class_document(const ScenarioConfig& c);

/// Writes the trajectory as CSV. Returns the validation summary when `c.validate` is set.
std::optional<nlohmann::json> evolve(const ScenarioConfig& c, std::ostream& out);

/// Exit status for an exception: 2 configuration, 3 numeric, 4 precondition, 1 anything else.
int exit_code_for(const std::exception& e);

/// Entry point of the `qevo` executable.
int run(int argc, char** argv);

}  // namespace qevo::cli
