#include "qevo/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>

#include "qevo/errors.hpp"

namespace qevo {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + ": missing key \"" + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

double number(const json& j, const char* key, const std::string& where) {
  return number(field(j, key, where), where + "." + key);
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<long>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Vec3 vec3(const json& j, const std::string& where) {
  const auto v = numbers(j, where);
  if (v.size() != 3) throw ConfigError(where + ": expected 3 components");
  return {v[0], v[1], v[2]};
}

TimeFn time_fn_or_zero(const json& j, const char* key, const std::string& where) {
  return j.contains(key) ? parse_time_fn(j[key], where + "." + key) : TimeFn::constant(0.0);
}

SampledTable parse_table(const json& h, const std::string& where) {
  only_keys(h, {"family", "times", "b0", "b"}, where);
  const auto times = numbers(field(h, "times", where), where + ".times");
  std::vector<double> b0 = h.contains("b0") ? numbers(h["b0"], where + ".b0") : std::vector<double>(times.size(), 0.0);
  const json& rows = field(h, "b", where);
  if (!rows.is_array()) throw ConfigError(where + ".b: expected an array of rows");
  std::vector<std::vector<double>> b;
  for (std::size_t i = 0; i < rows.size(); ++i) b.push_back(numbers(rows[i], where + ".b[" + std::to_string(i) + "]"));
  if (b0.size() != times.size()) throw ConfigError(where + ".b0: one value per sample time required");
  return SampledTable(times, std::move(b0), std::move(b));
}

void parse_hamiltonian(const json& h, ScenarioConfig& c) {
  const std::string where = "hamiltonian";
  if (!h.is_object()) throw ConfigError(where + ": expected an object");
  const json& tag = field(h, "family", where);
  if (!tag.is_string()) throw ConfigError(where + ".family: expected a string");
  c.family = tag.get<std::string>();
  const int d = c.dimension;
  const int n = d * d - 1;

  auto qubit_only = [&] {
    if (d != 2) throw ConfigError(where + ": family \"" + c.family + "\" requires dimension 2");
  };

  if (c.family == "constant") {
    only_keys(h, {"family", "b0", "b"}, where);
    const double b0 = number_or(h, "b0", 0.0, where);
    const auto b = numbers(field(h, "b", where), where + ".b");
    if (static_cast<int>(b.size()) != n) throw ConfigError(where + ".b: expected " + std::to_string(n) + " components");
    if (d == 2) {
      c.qubit.emplace(HamiltonianSpec::Constant{b0, Vec3(b[0], b[1], b[2])});
    } else {
      std::vector<TimeFn> fns;
      for (double v : b) fns.push_back(TimeFn::constant(v));
      c.qudit.emplace(d, TimeFn::constant(b0), std::move(fns));
    }
  } else if (c.family == "fixed_axis") {
    qubit_only();
    only_keys(h, {"family", "e_b", "bnorm", "b0"}, where);
    c.qubit.emplace(HamiltonianSpec::FixedAxis{vec3(field(h, "e_b", where), where + ".e_b"),
                                               parse_time_fn(field(h, "bnorm", where), where + ".bnorm"),
                                               time_fn_or_zero(h, "b0", where)});
  } else if (c.family == "rotating_field") {
    qubit_only();
    only_keys(h, {"family", "b", "theta", "omega", "eta", "b0"}, where);
    c.qubit.emplace(HamiltonianSpec::RotatingField{number(h, "b", where), number(h, "theta", where),
                                                   number(h, "omega", where), number_or(h, "eta", 0.0, where),
                                                   time_fn_or_zero(h, "b0", where)});
  } else if (c.family == "phi_driven") {
    qubit_only();
    only_keys(h, {"family", "q", "p", "lambda", "phi", "b0"}, where);
    c.qubit.emplace(HamiltonianSpec::PhiDriven{number(h, "q", where), number(h, "p", where),
                                               number(h, "lambda", where),
                                               parse_time_fn(field(h, "phi", where), where + ".phi"),
                                               time_fn_or_zero(h, "b0", where)});
  } else if (c.family == "coefficients") {
    only_keys(h, {"family", "b0", "b"}, where);
    const json& list = field(h, "b", where);
    if (!list.is_array()) throw ConfigError(where + ".b: expected an array of time functions");
    std::vector<TimeFn> fns;
    for (std::size_t i = 0; i < list.size(); ++i) fns.push_back(parse_time_fn(list[i], where + ".b[" + std::to_string(i) + "]"));
    c.qudit.emplace(d, time_fn_or_zero(h, "b0", where), std::move(fns));
  } else if (c.family == "sampled") {
    SampledTable table = parse_table(h, where);
    if (d == 2) {
      c.qubit.emplace(HamiltonianSpec::Sampled{std::move(table)});
    } else {
      c.qudit.emplace(d, std::move(table));
    }
  } else {
    throw ConfigError(where + ": unknown family \"" + c.family + "\"");
  }
}

}  // namespace

TimeFn parse_time_fn(const json& j, const std::string& where) {
  if (j.is_number()) return TimeFn::constant(j.get<double>());
  if (!j.is_object()) throw ConfigError(where + ": expected a number or a time-function object");
  const json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) throw ConfigError(where + ".kind: expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "constant") {
    only_keys(j, {"kind", "value"}, where);
    return TimeFn::constant(number(j, "value", where));
  }
  if (kind == "linear") {
    only_keys(j, {"kind", "a", "b"}, where);
    return TimeFn::linear(number_or(j, "a", 0.0, where), number_or(j, "b", 0.0, where));
  }
  if (kind == "polynomial") {
    only_keys(j, {"kind", "coefficients"}, where);
    return TimeFn::polynomial(numbers(field(j, "coefficients", where), where + ".coefficients"));
  }
  if (kind == "sinusoid") {
    only_keys(j, {"kind", "amplitude", "omega", "phase", "offset"}, where);
    return TimeFn::sinusoid(number(j, "amplitude", where), number(j, "omega", where), number_or(j, "phase", 0.0, where),
                            number_or(j, "offset", 0.0, where));
  }
  throw ConfigError(where + ": unknown time-function kind \"" + kind + "\"");
}

void validate_scenario(const ScenarioConfig& c) {
  if (!(c.t1 > c.t0)) throw ConfigError("scenario: t1 must exceed t0");
  if (!(c.step > 0.0)) throw ConfigError("scenario: step must be positive");
  if (c.output_stride && !(*c.output_stride > 0.0)) throw ConfigError("scenario: output_stride must be positive");
  if (c.oracle_steps < 2) throw ConfigError("scenario: oracle_steps must be at least 2");
  if (c.samples < 16) throw ConfigError("scenario: samples must be at least 16");
  if (!(c.tolerance > 0.0)) throw ConfigError("scenario: tolerance must be positive");
}

ScenarioConfig parse_scenario(const json& doc) {
  only_keys(doc, {"dimension", "hamiltonian", "t0", "t1", "step", "output_stride", "output", "validate", "oracle_steps",
                  "samples", "tolerance"},
            "scenario");
  ScenarioConfig c;
  c.dimension = static_cast<int>(integer(field(doc, "dimension", "scenario"), "scenario.dimension"));
  if (c.dimension < 2) throw ConfigError("scenario.dimension: must be >= 2");
  parse_hamiltonian(field(doc, "hamiltonian", "scenario"), c);
  c.t0 = number_or(doc, "t0", c.t0, "scenario");
  c.t1 = number(doc, "t1", "scenario");
  c.step = number(doc, "step", "scenario");
  if (doc.contains("output_stride")) c.output_stride = number(doc, "output_stride", "scenario");
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("scenario.output: expected a string");
    c.output = doc["output"].get<std::string>();
  }
  if (doc.contains("validate")) {
    if (!doc["validate"].is_boolean()) throw ConfigError("scenario.validate: expected a boolean");
    c.validate = doc["validate"].get<bool>();
  }
  if (doc.contains("oracle_steps")) c.oracle_steps = integer(doc["oracle_steps"], "scenario.oracle_steps");
  if (doc.contains("samples")) c.samples = static_cast<int>(integer(doc["samples"], "scenario.samples"));
  c.tolerance = number_or(doc, "tolerance", c.tolerance, "scenario");
  validate_scenario(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario " + path + ": " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace qevo
