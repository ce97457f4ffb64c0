#include "qevo/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "qevo/errors.hpp"

namespace qevo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(HamiltonianSpec::Family& family) {
  std::visit(overloaded{
                 [](HamiltonianSpec::Constant&) {},
                 [](HamiltonianSpec::FixedAxis& f) {
                   const double n = f.e_b.norm();
                   if (!(n > 0.0)) throw ConfigError("fixed_axis: e_b must be a nonzero vector");
                   f.e_b /= n;
                 },
                 [](HamiltonianSpec::RotatingField& f) {
                   if (!(f.b > 0.0)) throw ConfigError("rotating_field: b must be positive");
                   if (f.theta < 0.0 || f.theta > std::numbers::pi) {
                     throw ConfigError("rotating_field: theta must lie in [0, pi]");
                   }
                 },
                 [](HamiltonianSpec::PhiDriven& f) {
                   if (f.lambda == 0.0) throw ConfigError("phi_driven: lambda must be nonzero");
                 },
                 [](HamiltonianSpec::Sampled& f) {
                   if (f.table.components() != 3) throw ConfigError("sampled qubit table needs 3 components of b");
                 },
             },
             family);
}

// φ̇/λ, checked positive
double phi_scale(const HamiltonianSpec::PhiDriven& f, double t) {
  const double s = f.phi.derivative(t) / f.lambda;
  if (!(s > 0.0)) {
    throw PreconditionError("phi_driven: requires dphi/dt / lambda > 0, violated at t = " + std::to_string(t));
  }
  return s;
}

Vec3 to_vec3(const RVector& v) { return Vec3(v(0), v(1), v(2)); }

}  // namespace

// ---------------------------------------------------------------- SampledTable

SampledTable::SampledTable(std::vector<double> times, std::vector<double> b0vals,
                           std::vector<std::vector<double>> bvals)
    : times_(times), b0_(times, std::move(b0vals)) {
  if (bvals.size() != times_.size()) throw ConfigError("sampled table: one b row per sample time required");
  const std::size_t n = bvals.empty() ? 0 : bvals.front().size();
  if (n == 0) throw ConfigError("sampled table: b rows must be nonempty");
  for (const auto& row : bvals) {
    if (row.size() != n) throw ConfigError("sampled table: ragged b rows");
  }
  b_.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> column(times_.size());
    for (std::size_t i = 0; i < times_.size(); ++i) column[i] = bvals[i][c];
    b_.emplace_back(times_, std::move(column));
  }
}

RVector SampledTable::b(double t) const {
  RVector out(components());
  for (int c = 0; c < components(); ++c) out(c) = b_[static_cast<std::size_t>(c)](t);
  return out;
}

RVector SampledTable::b_dot(double t) const {
  RVector out(components());
  for (int c = 0; c < components(); ++c) out(c) = b_[static_cast<std::size_t>(c)].derivative(t);
  return out;
}

RVector SampledTable::b_integral(double a, double b) const {
  RVector out(components());
  for (int c = 0; c < components(); ++c) out(c) = b_[static_cast<std::size_t>(c)].integral(a, b);
  return out;
}

// ---------------------------------------------------------------- HamiltonianSpec

HamiltonianSpec::HamiltonianSpec(Family family) : family_(std::move(family)) { validate(family_); }

std::string HamiltonianSpec::family_name() const {
  return std::visit(overloaded{
                        [](const Constant&) { return std::string("constant"); },
                        [](const FixedAxis&) { return std::string("fixed_axis"); },
                        [](const RotatingField&) { return std::string("rotating_field"); },
                        [](const PhiDriven&) { return std::string("phi_driven"); },
                        [](const Sampled&) { return std::string("sampled"); },
                    },
                    family_);
}

double HamiltonianSpec::b0(double t) const {
  return std::visit(overloaded{
                        [](const Constant& f) { return f.b0; },
                        [t](const FixedAxis& f) { return f.b0(t); },
                        [t](const RotatingField& f) { return f.b0(t); },
                        [t](const PhiDriven& f) { return f.b0(t); },
                        [t](const Sampled& f) { return f.table.b0(t); },
                    },
                    family_);
}

Vec3 HamiltonianSpec::b(double t) const {
  return std::visit(overloaded{
                        [](const Constant& f) -> Vec3 { return f.b; },
                        [t](const FixedAxis& f) -> Vec3 { return f.bnorm(t) * f.e_b; },
                        [t](const RotatingField& f) -> Vec3 {
                          const double ph = f.omega * t + f.eta;
                          const double st = std::sin(f.theta);
                          return f.b * Vec3(st * std::cos(ph), st * std::sin(ph), std::cos(f.theta));
                        },
                        [t](const PhiDriven& f) -> Vec3 {
                          const double s = phi_scale(f, t);
                          const double ph = f.phi(t);
                          return s * Vec3(f.q * std::cos(ph), f.q * std::sin(ph), f.p);
                        },
                        [t](const Sampled& f) -> Vec3 { return to_vec3(f.table.b(t)); },
                    },
                    family_);
}

Vec3 HamiltonianSpec::b_dot(double t) const {
  return std::visit(overloaded{
                        [](const Constant&) -> Vec3 { return Vec3::Zero(); },
                        [t](const FixedAxis& f) -> Vec3 { return f.bnorm.derivative(t) * f.e_b; },
                        [t](const RotatingField& f) -> Vec3 {
                          const double ph = f.omega * t + f.eta;
                          const double st = std::sin(f.theta);
                          return f.b * f.omega * Vec3(-st * std::sin(ph), st * std::cos(ph), 0.0);
                        },
                        [t](const PhiDriven& f) -> Vec3 {
                          const double s = phi_scale(f, t);
                          const double sdot = f.phi.second_derivative(t) / f.lambda;
                          const double ph = f.phi(t);
                          const double phdot = f.phi.derivative(t);
                          const double c = std::cos(ph);
                          const double sn = std::sin(ph);
                          return Vec3(f.q * (sdot * c - s * phdot * sn), f.q * (sdot * sn + s * phdot * c), f.p * sdot);
                        },
                        [t](const Sampled& f) -> Vec3 { return to_vec3(f.table.b_dot(t)); },
                    },
                    family_);
}

double HamiltonianSpec::phase_integral(double t0, double t1) const {
  return std::visit(overloaded{
                        [=](const Constant& f) { return f.b0 * (t1 - t0); },
                        [=](const FixedAxis& f) { return f.b0.integral(t0, t1); },
                        [=](const RotatingField& f) { return f.b0.integral(t0, t1); },
                        [=](const PhiDriven& f) { return f.b0.integral(t0, t1); },
                        [=](const Sampled& f) { return f.table.b0_integral(t0, t1); },
                    },
                    family_);
}

Vec3 HamiltonianSpec::b_integral(double t0, double t1) const {
  return std::visit(
      overloaded{
          [=](const Constant& f) -> Vec3 { return f.b * (t1 - t0); },
          [=](const FixedAxis& f) -> Vec3 { return f.bnorm.integral(t0, t1) * f.e_b; },
          [=](const RotatingField& f) -> Vec3 {
            const double st = f.b * std::sin(f.theta);
            const double z = f.b * std::cos(f.theta) * (t1 - t0);
            if (f.omega == 0.0) {
              return Vec3(st * std::cos(f.eta) * (t1 - t0), st * std::sin(f.eta) * (t1 - t0), z);
            }
            const double p0 = f.omega * t0 + f.eta;
            const double p1 = f.omega * t1 + f.eta;
            return Vec3(st * (std::sin(p1) - std::sin(p0)) / f.omega, -st * (std::cos(p1) - std::cos(p0)) / f.omega, z);
          },
          [=](const PhiDriven& f) -> Vec3 {
            // b = (φ̇/λ)(q cos φ, q sin φ, p) has the antiderivative (1/λ)(q sin φ, −q cos φ, p φ)
            phi_scale(f, t0);
            phi_scale(f, t1);
            const double p0 = f.phi(t0);
            const double p1 = f.phi(t1);
            return Vec3(f.q * (std::sin(p1) - std::sin(p0)), -f.q * (std::cos(p1) - std::cos(p0)), f.p * (p1 - p0)) /
                   f.lambda;
          },
          [=](const Sampled& f) -> Vec3 { return to_vec3(f.table.b_integral(t0, t1)); },
      },
      family_);
}

std::optional<double> HamiltonianSpec::analytic_azimuth(double t) const {
  if (const auto* f = std::get_if<RotatingField>(&family_)) return f->omega * t + f->eta;
  if (const auto* f = std::get_if<PhiDriven>(&family_)) {
    return f->phi(t) + (f->q < 0.0 ? std::numbers::pi : 0.0);
  }
  return std::nullopt;
}

std::optional<double> HamiltonianSpec::analytic_azimuth_rate(double t) const {
  return std::visit(overloaded{
                        [](const Constant&) -> std::optional<double> { return 0.0; },
                        [](const FixedAxis&) -> std::optional<double> { return 0.0; },
                        [](const RotatingField& f) -> std::optional<double> { return f.omega; },
                        [t](const PhiDriven& f) -> std::optional<double> { return f.phi.derivative(t); },
                        [](const Sampled&) -> std::optional<double> { return std::nullopt; },
                    },
                    family_);
}

// ---------------------------------------------------------------- QuditHamiltonianSpec

QuditHamiltonianSpec::QuditHamiltonianSpec(int dimension, TimeFn b0, std::vector<TimeFn> b)
    : dim_(dimension), b0_(std::move(b0)), b_(std::move(b)) {
  if (dimension < 2) throw ConfigError("qudit Hamiltonian: dimension must be >= 2");
  const auto& list = std::get<std::vector<TimeFn>>(b_);
  if (static_cast<int>(list.size()) != components()) {
    throw ConfigError("qudit Hamiltonian: expected " + std::to_string(components()) + " coefficient functions, got " +
                      std::to_string(list.size()));
  }
}

QuditHamiltonianSpec::QuditHamiltonianSpec(int dimension, SampledTable table)
    : dim_(dimension), b_(std::move(table)) {
  if (dimension < 2) throw ConfigError("qudit Hamiltonian: dimension must be >= 2");
  if (std::get<SampledTable>(b_).components() != components()) {
    throw ConfigError("qudit Hamiltonian: sampled table has the wrong number of components");
  }
}

double QuditHamiltonianSpec::b0(double t) const {
  if (const auto* table = std::get_if<SampledTable>(&b_)) return table->b0(t);
  return b0_(t);
}

RVector QuditHamiltonianSpec::b(double t) const {
  if (const auto* table = std::get_if<SampledTable>(&b_)) return table->b(t);
  const auto& list = std::get<std::vector<TimeFn>>(b_);
  RVector out(components());
  for (int j = 0; j < components(); ++j) out(j) = list[static_cast<std::size_t>(j)](t);
  return out;
}

double QuditHamiltonianSpec::phase_integral(double t0, double t1) const {
  if (const auto* table = std::get_if<SampledTable>(&b_)) return table->b0_integral(t0, t1);
  return b0_.integral(t0, t1);
}

RVector QuditHamiltonianSpec::b_integral(double t0, double t1) const {
  if (const auto* table = std::get_if<SampledTable>(&b_)) return table->b_integral(t0, t1);
  const auto& list = std::get<std::vector<TimeFn>>(b_);
  RVector out(components());
  for (int j = 0; j < components(); ++j) out(j) = list[static_cast<std::size_t>(j)].integral(t0, t1);
  return out;
}

// ---------------------------------------------------------------- fields

BlochField to_field(const HamiltonianSpec& h) {
  BlochField f;
  f.dimension = 2;
  f.b0 = [h](double t) { return h.b0(t); };
  f.b = [h](double t) -> RVector { return h.b(t); };
  f.phase_integral = [h](double a, double b) { return h.phase_integral(a, b); };
  return f;
}

BlochField to_field(const QuditHamiltonianSpec& h) {
  BlochField f;
  f.dimension = h.dimension();
  f.b0 = [h](double t) { return h.b0(t); };
  f.b = [h](double t) { return h.b(t); };
  f.phase_integral = [h](double a, double b) { return h.phase_integral(a, b); };
  return f;
}

CMatrix hamiltonian_matrix(const BlochField& field, const GellMannBasis& basis, double t) {
  const int d = basis.dimension();
  if (field.dimension != d) throw ConfigError("Hamiltonian dimension does not match the basis");
  CMatrix h = std::sqrt(d / 2.0) * basis.contract(field.b(t));
  h.diagonal().array() += field.b0(t);
  return h;
}

}  // namespace qevo
