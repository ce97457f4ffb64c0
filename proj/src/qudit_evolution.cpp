#include "qevo/qudit_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qevo/errors.hpp"
#include "qevo/su_exponential.hpp"

namespace qevo {

namespace {

Eigen::VectorXcd pack(const QuditCoords& c) {
  Eigen::VectorXcd x(c.u.size() + 1);
  x(0) = c.u0;
  x.tail(c.u.size()) = c.u;
  return x;
}

QuditCoords unpack(const Eigen::VectorXcd& x) { return {x(0), x.tail(x.size() - 1)}; }

void check_constants(int dimension, const StructureConstants& sc) {
  if (sc.dimension() != dimension) {
    throw ConfigError("structure constants are for d = " + std::to_string(sc.dimension()) + ", Hamiltonian has d = " +
                      std::to_string(dimension));
  }
}

}  // namespace

FirstIntegralResiduals first_integral_residuals(const QuditCoords& c, const StructureConstants& sc) {
  const double s = std::sqrt(sc.dimension() / 2.0);
  const CVector u = kI * c.u;
  CVector r = c.u0 * u.conjugate() + std::conj(c.u0) * u;
  for (const auto& e : sc.d_entries()) r(e.j) += s * e.value * u(e.k) * std::conj(u(e.m));
  for (const auto& e : sc.f_entries()) r(e.j) += s * kI * e.value * u(e.k) * std::conj(u(e.m));
  return {c.norm_defect(), r.cwiseAbs()};
}

CMatrix gellmann_generator(const RVector& b, const StructureConstants& sc) {
  const int n = sc.size();
  const double s = std::sqrt(sc.dimension() / 2.0);
  CMatrix g = CMatrix::Zero(n + 1, n + 1);
  for (int j = 0; j < n; ++j) {
    g(0, j + 1) = b(j);
    g(j + 1, 0) = -b(j);
  }
  for (const auto& e : sc.f_entries()) g(e.j + 1, e.m + 1) += s * e.value * b(e.k);
  for (const auto& e : sc.d_entries()) g(e.j + 1, e.m + 1) -= kI * s * e.value * b(e.k);
  return g;
}

QuditTrajectory integrate_gellmann_ode(const BlochField& h, const StructureConstants& sc, double t0, double t1,
                                       double step, const IntegrationOptions& options) {
  check_constants(h.dimension, sc);
  const auto grid = output_grid(t0, t1, step, options.output_stride);
  QuditTrajectory traj;
  auto x = pack(QuditCoords::identity(sc.size()));
  traj.times.push_back(t0);
  traj.states.push_back(unpack(x));
  traj.phases.push_back(0.0);
  traj.norm_defects.push_back(0.0);
  traj.vector_residuals.push_back(0.0);

  for (std::size_t row = 1; row < grid.size(); ++row) {
    const double a = grid[row - 1];
    const double b = grid[row];
    const long n = count_steps(b - a, step);
    const double dt = (b - a) / static_cast<double>(n);
    double worst = 0.0;
    double worst_vec = 0.0;
    CMatrix g_start = gellmann_generator(h.b(a), sc);
    for (long k = 0; k < n; ++k) {
      const double t = a + static_cast<double>(k) * dt;
      const double t_end = (k + 1 == n) ? b : a + static_cast<double>(k + 1) * dt;
      const CMatrix g_mid = gellmann_generator(h.b(t + 0.5 * dt), sc);
      const CMatrix g_end = gellmann_generator(h.b(t_end), sc);
      const Eigen::VectorXcd k1 = g_start * x;
      const Eigen::VectorXcd k2 = g_mid * (x + 0.5 * dt * k1);
      const Eigen::VectorXcd k3 = g_mid * (x + 0.5 * dt * k2);
      const Eigen::VectorXcd k4 = g_end * (x + dt * k3);
      x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double sq = x.squaredNorm();
      worst = std::max(worst, std::abs(sq - 1.0));
      if (options.renormalize) x /= std::sqrt(sq);
      worst_vec = std::max(worst_vec, first_integral_residuals(unpack(x), sc).max_vector());
      g_start = g_end;
    }
    traj.times.push_back(b);
    traj.states.push_back(unpack(x));
    traj.phases.push_back(h.phase_integral(t0, b));
    traj.norm_defects.push_back(worst);
    traj.vector_residuals.push_back(worst_vec);
  }
  return traj;
}

QuditTrajectory integrate_gellmann_ode(const QuditHamiltonianSpec& h, const StructureConstants& sc, double t0,
                                       double t1, double step, const IntegrationOptions& options) {
  return integrate_gellmann_ode(to_field(h), sc, t0, t1, step, options);
}

CMatrix assemble_qudit_propagator(const QuditCoords& c, double phase, const GellMannBasis& basis) {
  if (c.u.size() != basis.size()) throw ConfigError("assemble_qudit_propagator: coordinate length mismatch");
  if (std::abs(c.norm_defect()) > 1e-8) {
    throw PreconditionError("assemble_qudit_propagator: scalar first integral violated (defect " +
                            std::to_string(c.norm_defect()) + ")");
  }
  const int d = basis.dimension();
  CMatrix u = c.u0 * CMatrix::Identity(d, d) + kI * std::sqrt(d / 2.0) * basis.contract(c.u);
  return std::exp(cplx{0.0, -phase}) * u;
}

CommutingResult commuting_check_general(const QuditHamiltonianSpec& h, const StructureConstants& sc, double t0,
                                        double t1, int samples) {
  check_constants(h.dimension(), sc);
  if (!(t1 > t0)) throw ConfigError("commuting check requires t1 > t0");
  if (samples < 16) throw ConfigError("commuting check requires at least 16 samples");
  CommutingResult out;
  double bmax = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = i == samples ? t1 : t0 + (t1 - t0) * i / samples;
    const RVector b = h.b(t);
    const RVector n = h.b_integral(t0, t);
    bmax = std::max(bmax, b.norm());
    RVector r = RVector::Zero(sc.size());
    for (const auto& e : sc.f_entries()) r(e.j) += e.value * b(e.k) * n(e.m);
    out.residual = std::max(out.residual, r.cwiseAbs().maxCoeff());
  }
  out.tolerance = 1e-9 * bmax * bmax * (t1 - t0);
  out.commuting = out.residual <= out.tolerance;
  return out;
}

CMatrix commuting_closed_form_general(const QuditHamiltonianSpec& h, const GellMannBasis& basis, double t0,
                                      double t1) {
  if (h.dimension() != basis.dimension()) throw ConfigError("commuting_closed_form_general: dimension mismatch");
  return std::exp(cplx{0.0, -h.phase_integral(t0, t1)}) * exp_sud(h.b_integral(t0, t1), basis);
}

double forward_map_check(const RVector& n, const GellMannBasis& basis) {
  const int d = basis.dimension();
  if (n.size() != basis.size()) throw ConfigError("forward_map_check: vector length mismatch");
  cplx k;
  CVector grad;
  if (d == 2) {
    k = k2(n);
    grad = grad_k2(n).cast<cplx>();
  } else if (d == 3 && n.norm() > kSmallNorm && su3_degeneracy_margin(su3_angles(n).phi) > kSu3DegeneracyThreshold) {
    k = k3(n);
    grad = grad_k3(n);
  } else {
    k = kd(n, basis);
    grad = grad_kd_finite_difference(n, basis);
  }
  const CMatrix v = k / static_cast<double>(d) * CMatrix::Identity(d, d) +
                    kI * std::sqrt(d / 2.0) / static_cast<double>(d) * basis.contract(grad);
  return max_abs(exp_sud(n, basis) - v);
}

}  // namespace qevo
