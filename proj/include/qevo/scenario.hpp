#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qevo/hamiltonian.hpp"
#include "qevo/time_fn.hpp"

namespace qevo {

/// A parsed scenario document. Exactly one of `qubit` / `qudit` is set:
/// d = 2 families with a dedicated qubit form use `qubit`, everything else `qudit`.
struct ScenarioConfig {
  int dimension = 2;
  std::string family;
  std::optional<HamiltonianSpec> qubit;
  std::optional<QuditHamiltonianSpec> qudit;
  double t0 = 0.0;
  double t1 = 1.0;
  double step = 1e-3;
  /// Row spacing of the trajectory output; defaults to (t1 − t0)/1000.
  std::optional<double> output_stride;
  std::string output;
  bool validate = false;
  long oracle_steps = 200000;
  int samples = 64;
  double tolerance = 1e-9;

  double stride() const { return output_stride.value_or((t1 - t0) / 1000.0); }
  BlochField field() const { return qubit ? to_field(*qubit) : to_field(*qudit); }
};

/// Throws ConfigError on unknown keys, missing keys, wrong types or incompatible values.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::string& path);

/// Bare numbers are constants; objects carry a "kind" tag.
TimeFn parse_time_fn(const nlohmann::json& j, const std::string& where);

/// Re-checks t1 > t0, step > 0 and the other numeric ranges after overrides.
void validate_scenario(const ScenarioConfig& c);

}  // namespace qevo
