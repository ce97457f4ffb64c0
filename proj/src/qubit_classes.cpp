#include "qevo/qubit_classes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qevo/errors.hpp"
#include "qevo/quadrature.hpp"

namespace qevo {

namespace {

struct SphericalPoint {
  double bnorm = 0.0;
  double theta = 0.0;
  double phi = 0.0;  // principal value
  double phi_dot = 0.0;
};

// φ̇ = (b₁ḃ₂ − b₂ḃ₁)/(b₁² + b₂²) unless the family knows it.
double azimuth_rate(const HamiltonianSpec& h, double t, const Vec3& b) {
  if (auto rate = h.analytic_azimuth_rate(t)) return *rate;
  const double rho2 = b(0) * b(0) + b(1) * b(1);
  if (!(rho2 > 1e-24 * b.squaredNorm()) || rho2 == 0.0) {
    throw PreconditionError("azimuth of b is undefined on the x3 axis at t = " + std::to_string(t));
  }
  const Vec3 bd = h.b_dot(t);
  return (b(0) * bd(1) - b(1) * bd(0)) / rho2;
}

SphericalPoint spherical_point(const HamiltonianSpec& h, double t) {
  const Vec3 b = h.b(t);
  SphericalPoint p;
  p.bnorm = b.norm();
  if (!(p.bnorm > 0.0)) throw PreconditionError("b vanishes at t = " + std::to_string(t));
  p.theta = std::acos(std::clamp(b(2) / p.bnorm, -1.0, 1.0));
  p.phi = std::atan2(b(1), b(0));
  p.phi_dot = azimuth_rate(h, t, b);
  return p;
}

// ‖b‖Ω_b = √((b₃ − φ̇/2)² + b₁² + b₂²)
double gamma_rate(const HamiltonianSpec& h, double t) {
  const Vec3 b = h.b(t);
  if (b.squaredNorm() == 0.0) return 0.0;
  const double w = b(2) - 0.5 * azimuth_rate(h, t, b);
  return std::sqrt(w * w + b(0) * b(0) + b(1) * b(1));
}

std::vector<double> uniform_grid(double t0, double t1, int samples) {
  std::vector<double> grid(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) grid[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / samples;
  grid.back() = t1;
  return grid;
}

void check_interval(double t0, double t1, int samples, int min_samples) {
  if (!(t1 > t0)) throw ConfigError("class check requires t1 > t0");
  if (samples < min_samples) throw ConfigError("class check requires at least " + std::to_string(min_samples) + " samples");
}

}  // namespace

std::string to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::Commuting:
      return "commuting";
    case ClassKind::Theorem3:
      return "theorem3";
    case ClassKind::None:
      break;
  }
  return "none";
}

ClassCertificate commuting_check(const HamiltonianSpec& h, double t0, double t1, int samples) {
  check_interval(t0, t1, samples, 16);
  ClassCertificate cert;
  cert.sample_times = uniform_grid(t0, t1, samples);
  double bmax = 0.0;
  for (double t : cert.sample_times) {
    const Vec3 b = h.b(t);
    bmax = std::max(bmax, b.norm());
    cert.residual = std::max(cert.residual, b.cross(h.b_integral(t0, t)).norm());
  }
  cert.tolerance = 1e-9 * bmax * bmax * (t1 - t0);
  cert.kind = cert.residual <= cert.tolerance ? ClassKind::Commuting : ClassKind::None;
  return cert;
}

QuaternionState commuting_closed_form(const HamiltonianSpec& h, double t0, double t1) {
  const Vec3 n = h.b_integral(t0, t1);
  const double x = n.norm();
  const double sinc = x < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return {std::cos(x), -sinc * n};
}

SphericalTrack to_spherical(const HamiltonianSpec& h, double t0, double t1, int samples) {
  check_interval(t0, t1, samples, 1);
  SphericalTrack track;
  track.times = uniform_grid(t0, t1, samples);
  for (double t : track.times) {
    const Vec3 b = h.b(t);
    const double rho = std::hypot(b(0), b(1));
    if (!(rho > 1e-12 * b.norm()) || rho == 0.0) {
      throw PreconditionError("to_spherical: azimuth undefined, b is zero or on the x3 axis at t = " + std::to_string(t));
    }
    const SphericalPoint p = spherical_point(h, t);
    double phi = p.phi;
    if (auto exact = h.analytic_azimuth(t)) {
      phi = *exact;
    } else if (!track.phi.empty()) {
      const double prev = track.phi.back();
      phi += 2.0 * std::numbers::pi * std::round((prev - phi) / (2.0 * std::numbers::pi));
    }
    track.bnorm.push_back(p.bnorm);
    track.theta.push_back(p.theta);
    track.phi.push_back(phi);
    track.phi_dot.push_back(p.phi_dot);
  }
  return track;
}

Theorem3Invariants theorem3_invariants(double bnorm, double theta, double phi_dot) {
  if (!(bnorm > 0.0)) throw PreconditionError("theorem3: b vanishes");
  const double c = std::cos(theta) - phi_dot / (2.0 * bnorm);
  const double s = std::sin(theta);
  const double omega = std::hypot(c, s);
  if (!(omega > 0.0)) throw PreconditionError("theorem3: Omega_b vanishes");
  return {c / omega, s / omega, omega, bnorm * omega};
}

ClassCertificate class_certificate_theorem3(const HamiltonianSpec& h, double t0, double t1, int samples,
                                            double tolerance) {
  const SphericalTrack track = to_spherical(h, t0, t1, samples);
  ClassCertificate cert;
  cert.tolerance = tolerance;
  cert.sample_times = track.times;
  double j1_0 = 0.0;
  double j2_0 = 0.0;
  for (std::size_t i = 0; i < track.times.size(); ++i) {
    const auto inv = theorem3_invariants(track.bnorm[i], track.theta[i], track.phi_dot[i]);
    if (!(inv.rate > 0.0)) {
      throw PreconditionError("theorem3: |b| Omega_b vanishes at t = " + std::to_string(track.times[i]));
    }
    cert.omega_samples.push_back(inv.omega_b);
    if (i == 0) {
      j1_0 = inv.J1;
      j2_0 = inv.J2;
    }
    cert.max_J_drift = std::max({cert.max_J_drift, std::abs(inv.J1 - j1_0), std::abs(inv.J2 - j2_0)});
  }
  cert.J1 = j1_0;
  cert.J2 = j2_0;
  cert.kind = cert.max_J_drift <= tolerance ? ClassKind::Theorem3 : ClassKind::None;
  return cert;
}

RotatingFieldParams rotating_field_params(const HamiltonianSpec::RotatingField& f) {
  const auto inv = theorem3_invariants(f.b, f.theta, f.omega);
  const double c2 = 2.0 * f.b * std::cos(f.theta) - f.omega;
  const double s2 = 2.0 * f.b * std::sin(f.theta);
  return {inv.J1, inv.J2, inv.omega_b, std::hypot(c2, s2)};
}

PhiDrivenParams phi_driven_params(const HamiltonianSpec::PhiDriven& f) {
  const double a = f.p - 0.5 * f.lambda;
  const double zeta = std::sqrt(a * a + f.q * f.q);
  if (!(zeta > 0.0)) throw PreconditionError("phi_driven: zeta vanishes");
  return {zeta, a / zeta, f.q / zeta};
}

double gamma_b(const HamiltonianSpec& h, double t0, double t1) {
  if (t1 == t0) return 0.0;
  if (const auto* f = std::get_if<HamiltonianSpec::RotatingField>(&h.family())) {
    const double c = f->b * std::cos(f->theta) - 0.5 * f->omega;
    const double s = f->b * std::sin(f->theta);
    return std::hypot(c, s) * (t1 - t0);
  }
  if (const auto* f = std::get_if<HamiltonianSpec::PhiDriven>(&h.family())) {
    h.b(t0);
    h.b(t1);
    return phi_driven_params(*f).zeta / f->lambda * (f->phi(t1) - f->phi(t0));
  }
  if (const auto* f = std::get_if<HamiltonianSpec::Constant>(&h.family())) return f->b.norm() * (t1 - t0);
  return adaptive_simpson([&h](double t) { return gamma_rate(h, t); }, t0, t1);
}

double azimuth_change(const HamiltonianSpec& h, double t0, double t1) {
  if (t1 == t0) return 0.0;
  const auto p0 = h.analytic_azimuth(t0);
  const auto p1 = h.analytic_azimuth(t1);
  if (p0 && p1) return *p1 - *p0;
  if (auto rate = h.analytic_azimuth_rate(t0); rate && *rate == 0.0 && h.analytic_azimuth_rate(t1) == 0.0) return 0.0;
  return adaptive_simpson([&h](double t) { return azimuth_rate(h, t, h.b(t)); }, t0, t1);
}

QuaternionState theorem3_closed_form(double J1, double J2, double phi_t, double phi_t0, double gamma) {
  const double half_diff = 0.5 * (phi_t - phi_t0);
  const double half_sum = 0.5 * (phi_t + phi_t0);
  const double cd = std::cos(half_diff);
  const double sd = std::sin(half_diff);
  const double cg = std::cos(gamma);
  const double sg = std::sin(gamma);
  QuaternionState q;
  q.u0 = cd * cg - J1 * sd * sg;
  q.u = Vec3(-J2 * std::cos(half_sum) * sg, -J2 * std::sin(half_sum) * sg, -J1 * cd * sg - sd * cg);
  return q;
}

QuaternionState theorem3_closed_form(const HamiltonianSpec& h, double t0, double t1) {
  if (t1 == t0) return QuaternionState::identity();
  const SphericalPoint p = spherical_point(h, t0);
  const auto inv = theorem3_invariants(p.bnorm, p.theta, p.phi_dot);
  const double phi0 = h.analytic_azimuth(t0).value_or(p.phi);
  const double phi1 = phi0 + azimuth_change(h, t0, t1);
  return theorem3_closed_form(inv.J1, inv.J2, phi1, phi0, gamma_b(h, t0, t1));
}

CVector rotating_field_pure_state(const HamiltonianSpec::RotatingField& f, double t) {
  const auto par = rotating_field_params(f);
  const double gamma = f.b * par.Omega_b * t;
  const cplx phase = std::exp(cplx{0.0, -f.b0.integral(0.0, t)});
  CVector psi(2);
  psi(0) = phase * cplx{std::cos(gamma), -par.J1 * std::sin(gamma)} * std::exp(cplx{0.0, -0.5 * f.omega * t});
  psi(1) = phase * cplx{0.0, -par.J2 * std::sin(gamma)} * std::exp(cplx{0.0, 0.5 * f.omega * t + f.eta});
  return psi;
}

}  // namespace qevo
