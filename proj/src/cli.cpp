#include "qevo/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "qevo/errors.hpp"
#include "qevo/gellmann.hpp"
#include "qevo/oracle.hpp"
#include "qevo/qubit_classes.hpp"
#include "qevo/qubit_evolution.hpp"
#include "qevo/qudit_evolution.hpp"
#include "qevo/su_exponential.hpp"

namespace qevo::cli {

using nlohmann::json;

namespace {

std::string g17(double x) { return fmt::format("{:.17g}", x); }

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("matrix entry must be a number or a [re, im] pair");
}

// Accumulates the oracle alongside the model rows and returns per-row max-entry errors.
std::vector<double> oracle_errors(const ScenarioConfig& c, const std::vector<double>& times,
                                  const std::vector<CMatrix>& model) {
  const auto basis = build_basis(c.dimension);
  const BlochField field = c.field();
  const int d = c.dimension;
  CMatrix u = CMatrix::Identity(d, d);
  std::vector<double> err(times.size(), 0.0);
  err[0] = max_abs(model[0] - u);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double share = (times[i] - times[i - 1]) / (c.t1 - c.t0);
    const long steps = std::max<long>(2, static_cast<long>(std::ceil(share * static_cast<double>(c.oracle_steps))));
    u = midpoint_product(field, basis, times[i - 1], times[i], steps) * u;
    err[i] = max_abs(model[i] - u);
  }
  return err;
}

json summary(const ScenarioConfig& c, const std::vector<double>& err, const std::vector<double>& defects) {
  json s;
  s["family"] = c.family;
  s["dimension"] = c.dimension;
  s["rows"] = err.size();
  s["oracle_steps"] = c.oracle_steps;
  s["max_oracle_err"] = *std::max_element(err.begin(), err.end());
  s["final_oracle_err"] = err.back();
  s["max_norm_defect"] = *std::max_element(defects.begin(), defects.end());
  return s;
}

std::optional<json> evolve_qubit(const ScenarioConfig& c, std::ostream& out) {
  const auto traj = integrate_quaternion(*c.qubit, c.t0, c.t1, c.step, {c.stride(), true});
  std::vector<double> err;
  if (c.validate) {
    std::vector<CMatrix> model;
    model.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) model.push_back(assemble_propagator(traj.states[i], traj.phases[i]));
    err = oracle_errors(c, traj.times, model);
  }
  out << "t,u0,u1,u2,u3,phase,norm_defect" << (c.validate ? ",oracle_err" : "") << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& q = traj.states[i];
    out << g17(traj.times[i]) << ',' << g17(q.u0) << ',' << g17(q.u(0)) << ',' << g17(q.u(1)) << ',' << g17(q.u(2))
        << ',' << g17(traj.phases[i]) << ',' << g17(traj.norm_defects[i]);
    if (c.validate) out << ',' << g17(err[i]);
    out << '\n';
  }
  if (!c.validate) return std::nullopt;
  return summary(c, err, traj.norm_defects);
}

std::optional<json> evolve_qudit(const ScenarioConfig& c, std::ostream& out) {
  const auto basis = build_basis(c.dimension);
  const auto sc = structure_constants(basis);
  const auto traj = integrate_gellmann_ode(*c.qudit, sc, c.t0, c.t1, c.step, {c.stride(), true});
  std::vector<double> err;
  if (c.validate) {
    std::vector<CMatrix> model;
    model.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
      model.push_back(assemble_qudit_propagator(traj.states[i], traj.phases[i], basis));
    }
    err = oracle_errors(c, traj.times, model);
  }
  out << "t,u0_re,u0_im";
  for (int j = 1; j <= sc.size(); ++j) out << ",u" << j << "_re,u" << j << "_im";
  out << ",phase,norm_defect,vector_residual" << (c.validate ? ",oracle_err" : "") << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.states[i];
    out << g17(traj.times[i]) << ',' << g17(s.u0.real()) << ',' << g17(s.u0.imag());
    for (Eigen::Index j = 0; j < s.u.size(); ++j) out << ',' << g17(s.u(j).real()) << ',' << g17(s.u(j).imag());
    out << ',' << g17(traj.phases[i]) << ',' << g17(traj.norm_defects[i]) << ',' << g17(traj.vector_residuals[i]);
    if (c.validate) out << ',' << g17(err[i]);
    out << '\n';
  }
  if (!c.validate) return std::nullopt;
  return summary(c, err, traj.norm_defects);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void init_logging() {
  auto logger = spdlog::get("qevo");
  if (!logger) logger = spdlog::stderr_color_mt("qevo");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("QEVO_LOG");
  const std::string level = env ? env : "error";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    throw ConfigError("QEVO_LOG must be one of error, info, debug (got \"" + level + "\")");
  }
}

enum class Command { Evolve, Validate, CheckClass };

// Runs one scenario; `out` empty means stdout. Returns an exit code.
int run_scenario(Command cmd, const std::string& config, const Overrides& o, std::string out,
                 const std::string& summary_path) {
  try {
    ScenarioConfig c = load_scenario(config);
    apply(o, c);
    if (cmd == Command::Validate) c.validate = true;
    if (cmd == Command::Evolve) c.validate = false;
    if (out.empty()) out = c.output;
    const char* label = cmd == Command::CheckClass ? "check-class" : (cmd == Command::Validate ? "validate" : "evolve");
    spdlog::info("{}: {} family={} d={} t=[{}, {}] step={}", config, label, c.family, c.dimension, c.t0, c.t1, c.step);
    if (cmd == Command::CheckClass) {
      write_text(out, dump(check_class_document(c)));
      return 0;
    }
    std::ostringstream csv;
    const auto s = evolve(c, csv);
    write_text(out, csv.str());
    if (s) {
      spdlog::info("{}: max oracle_err {}", config, (*s)["max_oracle_err"].get<double>());
      if (!summary_path.empty()) {
        write_text(summary_path, dump(*s));
      } else if (out.empty()) {
        std::cerr << s->dump() << '\n';
      } else {
        std::cout << dump(*s);
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "qevo: " << config << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int run_batch(Command cmd, const std::vector<std::string>& configs, const Overrides& o, const std::string& out_dir,
              int jobs) {
  if (out_dir.empty()) throw ConfigError("--out must name a directory when several configs are given");
  std::filesystem::create_directories(out_dir);
  std::vector<int> codes(configs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      const std::string stem = std::filesystem::path(configs[i]).stem().string();
      const auto base = std::filesystem::path(out_dir) / stem;
      const std::string ext = cmd == Command::CheckClass ? ".json" : ".csv";
      codes[i] = run_scenario(cmd, configs[i], o, base.string() + ext,
                              cmd == Command::Validate ? base.string() + ".summary.json" : "");
    }
  };
  const int n = std::clamp(jobs, 1, static_cast<int>(configs.size()));
  std::vector<std::thread> pool;
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (int code : codes) {
    if (code != 0) return code;
  }
  return 0;
}

RVector parse_vector(const std::string& text, int dimension) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("--vector: ") + e.what());
  }
  if (!j.is_array()) throw ConfigError("--vector: expected a JSON array");
  const int n = dimension * dimension - 1;
  if (static_cast<int>(j.size()) != n) {
    throw ConfigError("--vector: expected " + std::to_string(n) + " components for d = " + std::to_string(dimension));
  }
  RVector r(n);
  for (int i = 0; i < n; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) throw ConfigError("--vector: entries must be numbers");
    r(i) = j[static_cast<std::size_t>(i)].get<double>();
  }
  return r;
}

}  // namespace

void apply(const Overrides& o, ScenarioConfig& c) {
  if (o.t0) c.t0 = *o.t0;
  if (o.t1) c.t1 = *o.t1;
  if (o.step) c.step = *o.step;
  if (o.oracle_steps) c.oracle_steps = *o.oracle_steps;
  validate_scenario(c);
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& doc) {
  const json& j = doc.is_object() && doc.contains("matrix") ? doc["matrix"] : doc;
  if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("matrix: must be square");
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json basis_document(int dimension) {
  const auto basis = build_basis(dimension);
  json gens = json::array();
  for (const auto& g : basis.generators()) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index k = 0; k < g.cols(); ++k) flat.push_back(complex_pair(g(i, k)));
    }
    gens.push_back(std::move(flat));
  }
  return {{"dimension", dimension}, {"generators", std::move(gens)}};
}

json decompose_document(const CMatrix& a, int dimension) {
  const auto dec = decompose(a, build_basis(dimension));
  json coeffs = json::array();
  for (Eigen::Index j = 0; j < dec.a.size(); ++j) coeffs.push_back(complex_pair(dec.a(j)));
  return {{"dimension", dimension}, {"a0", complex_pair(dec.a0)}, {"a", std::move(coeffs)}};
}

json expmap_document(const RVector& r, int dimension) {
  CMatrix u;
  std::string method;
  if (dimension == 2) {
    u = exp_su2(r);
    method = "su2_closed_form";
  } else if (dimension == 3) {
    u = exp_su3(r);
    const bool closed = r.norm() >= kSmallNorm && su3_degeneracy_margin(su3_angles(r).phi) >= kSu3DegeneracyThreshold;
    method = closed ? "su3_closed_form" : "spectral";
  } else {
    u = exp_sud(r, build_basis(dimension));
    method = "spectral";
  }
  return {{"dimension", dimension},
          {"method", method},
          {"matrix", matrix_to_json(u)},
          {"unitarity_defect", unitarity_defect(u)}};
}

json check_class_document(const ScenarioConfig& c) {
  json doc;
  doc["family"] = c.family;
  doc["dimension"] = c.dimension;
  doc["t0"] = c.t0;
  doc["t1"] = c.t1;
  if (c.qudit) {
    const auto basis = build_basis(c.dimension);
    const auto r = commuting_check_general(*c.qudit, structure_constants(basis), c.t0, c.t1, c.samples);
    doc["kind"] = r.commuting ? "commuting" : "none";
    doc["commuting"] = {{"accepted", r.commuting}, {"residual", r.residual}, {"tolerance", r.tolerance}};
    return doc;
  }
  const HamiltonianSpec& h = *c.qubit;
  const auto comm = commuting_check(h, c.t0, c.t1, c.samples);
  doc["commuting"] = {{"accepted", comm.kind == ClassKind::Commuting},
                      {"residual", comm.residual},
                      {"tolerance", comm.tolerance}};
  bool theorem3 = false;
  try {
    const auto cert = class_certificate_theorem3(h, c.t0, c.t1, c.samples, c.tolerance);
    theorem3 = cert.kind == ClassKind::Theorem3;
    doc["theorem3"] = {{"accepted", theorem3},     {"J1", cert.J1},
                       {"J2", cert.J2},            {"max_J_drift", cert.max_J_drift},
                       {"tolerance", cert.tolerance}, {"omega_samples", cert.omega_samples}};
    if (theorem3) doc["theorem3"]["gamma_b"] = gamma_b(h, c.t0, c.t1);
  } catch (const PreconditionError& e) {
    doc["theorem3"] = {{"accepted", false}, {"error", e.what()}};
  }
  if (const auto* f = std::get_if<HamiltonianSpec::RotatingField>(&h.family())) {
    const auto p = rotating_field_params(*f);
    doc["family_parameters"] = {{"J1", p.J1}, {"J2", p.J2}, {"Omega_b", p.Omega_b}, {"Omega_tilde", p.Omega_tilde}};
  } else if (const auto* f = std::get_if<HamiltonianSpec::PhiDriven>(&h.family())) {
    const auto p = phi_driven_params(*f);
    doc["family_parameters"] = {{"zeta", p.zeta}, {"J1", p.J1}, {"J2", p.J2}};
  }
  doc["kind"] = comm.kind == ClassKind::Commuting ? "commuting" : (theorem3 ? "theorem3" : "none");
  return doc;
}

std::optional<json> evolve(const ScenarioConfig& c, std::ostream& out) {
  return c.qubit ? evolve_qubit(c, out) : evolve_qudit(c, out);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericError*>(&e)) return 3;
  if (dynamic_cast<const PreconditionError*>(&e)) return 4;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  return 1;
}

int run(int argc, char** argv) {
  CLI::App app{"Unitary evolution of d-level quantum systems in the generalized Gell-Mann representation", "qevo"};
  app.require_subcommand(1);

  int dim = 2;
  std::string vector_text;
  std::string matrix_path;
  std::vector<std::string> configs;
  std::string out;
  int jobs = 1;
  Overrides o;

  auto* basis_cmd = app.add_subcommand("basis", "Print the Gell-Mann generators for dimension d");
  basis_cmd->add_option("--dim", dim, "Dimension d >= 2")->required();
  basis_cmd->add_option("--out", out, "Output path (default stdout)");

  auto* decompose_cmd = app.add_subcommand("decompose", "Bloch coordinates (a0, a) of a d x d matrix");
  decompose_cmd->add_option("--matrix", matrix_path, "JSON file holding the matrix")->required();
  decompose_cmd->add_option("--dim", dim, "Dimension d >= 2")->required();
  decompose_cmd->add_option("--out", out, "Output path (default stdout)");

  auto* expmap_cmd = app.add_subcommand("expmap", "exp{-i sqrt(d/2) r.Lambda} for a coefficient vector r");
  expmap_cmd->add_option("--vector", vector_text, "JSON array of d^2-1 numbers")->required();
  expmap_cmd->add_option("--dim", dim, "Dimension d >= 2")->required();
  expmap_cmd->add_option("--out", out, "Output path (default stdout)");

  auto add_scenario_options = [&](CLI::App* sub) {
    sub->add_option("--config,configs", configs, "Scenario file(s)")->required();
    sub->add_option("--out", out, "Output file, or directory when several configs are given");
    sub->add_option("--t0", o.t0, "Override t0");
    sub->add_option("--t1", o.t1, "Override t1");
    sub->add_option("--step", o.step, "Override the integration step");
    sub->add_option("--oracle-steps", o.oracle_steps, "Override the oracle step count");
    sub->add_option("--jobs", jobs, "Scenarios to run concurrently")->check(CLI::PositiveNumber);
  };
  auto* evolve_cmd = app.add_subcommand("evolve", "Integrate a scenario and write the trajectory");
  add_scenario_options(evolve_cmd);
  auto* check_cmd = app.add_subcommand("check-class", "Certify commuting or theorem3 class membership");
  add_scenario_options(check_cmd);
  auto* validate_cmd = app.add_subcommand("validate", "Evolve and compare every row with the stepwise oracle");
  add_scenario_options(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    init_logging();
    if (basis_cmd->parsed()) {
      write_text(out, dump(basis_document(dim)));
      return 0;
    }
    if (decompose_cmd->parsed()) {
      std::ifstream in(matrix_path);
      if (!in) throw ConfigError("cannot open matrix file " + matrix_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError("matrix file " + matrix_path + ": " + e.what());
      }
      const CMatrix a = matrix_from_json(doc);
      if (a.rows() != dim) throw ConfigError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.rows()) +
                                             " but --dim is " + std::to_string(dim));
      write_text(out, dump(decompose_document(a, dim)));
      return 0;
    }
    if (expmap_cmd->parsed()) {
      if (dim < 2) throw ConfigError("--dim must be >= 2");
      write_text(out, dump(expmap_document(parse_vector(vector_text, dim), dim)));
      return 0;
    }
    const Command cmd = evolve_cmd->parsed() ? Command::Evolve
                        : check_cmd->parsed() ? Command::CheckClass
                                              : Command::Validate;
    if (configs.size() == 1) return run_scenario(cmd, configs.front(), o, out, "");
    return run_batch(cmd, configs, o, out, jobs);
  } catch (const std::exception& e) {
    std::cerr << "qevo: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace qevo::cli
