#include "qevo/qubit_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qevo/errors.hpp"

namespace qevo {

QuaternionTrajectory integrate_quaternion(const HamiltonianSpec& h, double t0, double t1, double step,
                                          const IntegrationOptions& options) {
  const auto grid = output_grid(t0, t1, step, options.output_stride);
  QuaternionTrajectory traj;
  traj.times.reserve(grid.size());
  traj.states.reserve(grid.size());
  traj.phases.reserve(grid.size());
  traj.norm_defects.reserve(grid.size());

  Eigen::Vector4d q(1.0, 0.0, 0.0, 0.0);
  traj.times.push_back(t0);
  traj.states.push_back(QuaternionState::identity());
  traj.phases.push_back(0.0);
  traj.norm_defects.push_back(0.0);

  for (std::size_t row = 1; row < grid.size(); ++row) {
    const double a = grid[row - 1];
    const double b = grid[row];
    const long n = count_steps(b - a, step);
    const double dt = (b - a) / static_cast<double>(n);
    double worst = 0.0;
    Eigen::Matrix4d a_start = skew_matrix(h.b(a));
    for (long k = 0; k < n; ++k) {
      const double t = a + static_cast<double>(k) * dt;
      const double t_end = (k + 1 == n) ? b : a + static_cast<double>(k + 1) * dt;
      const Eigen::Matrix4d a_mid = skew_matrix(h.b(t + 0.5 * dt));
      const Eigen::Matrix4d a_end = skew_matrix(h.b(t_end));
      const Eigen::Vector4d k1 = a_start * q;
      const Eigen::Vector4d k2 = a_mid * (q + 0.5 * dt * k1);
      const Eigen::Vector4d k3 = a_mid * (q + 0.5 * dt * k2);
      const Eigen::Vector4d k4 = a_end * (q + dt * k3);
      q += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double defect = std::abs(q.squaredNorm() - 1.0);
      worst = std::max(worst, defect);
      if (options.renormalize) q.normalize();
      a_start = a_end;
    }
    traj.times.push_back(b);
    traj.states.push_back(QuaternionState::from_vector(q));
    traj.phases.push_back(h.phase_integral(t0, b));
    traj.norm_defects.push_back(worst);
  }
  return traj;
}

double phase_integral(const HamiltonianSpec& h, double t0, double t1) { return h.phase_integral(t0, t1); }

double n_flow_coefficient_series(double x) {
  const double x2 = x * x;
  return 1.0 / 3.0 + x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 * (1.0 / 4725.0 + x2 * (2.0 / 93555.0))));
}

double n_flow_coefficient_direct(double x) { return (1.0 - x / std::tan(x)) / (x * x); }

double n_flow_coefficient(double x) {
  return x < kNFlowSeriesCutoff ? n_flow_coefficient_series(x) : n_flow_coefficient_direct(x);
}

Vec3 n_flow_rhs(const Vec3& n, const Vec3& b) {
  const Vec3 bxn = b.cross(n);
  return b + bxn - n_flow_coefficient(n.norm()) * n.cross(bxn);
}

NTrajectory integrate_n_ode(const HamiltonianSpec& h, double t0, double t1, double step,
                            const IntegrationOptions& options) {
  const auto grid = output_grid(t0, t1, step, options.output_stride);
  const double limit = std::numbers::pi - kChartMargin;
  NTrajectory traj;
  Vec3 n = Vec3::Zero();
  traj.times.push_back(t0);
  traj.states.push_back(n);
  traj.phases.push_back(0.0);
  traj.norm_defects.push_back(0.0);

  for (std::size_t row = 1; row < grid.size(); ++row) {
    const double a = grid[row - 1];
    const double b = grid[row];
    const long steps = count_steps(b - a, step);
    const double dt = (b - a) / static_cast<double>(steps);
    Vec3 b_start = h.b(a);
    for (long k = 0; k < steps; ++k) {
      const double t = a + static_cast<double>(k) * dt;
      const double t_end = (k + 1 == steps) ? b : a + static_cast<double>(k + 1) * dt;
      const Vec3 b_mid = h.b(t + 0.5 * dt);
      const Vec3 b_end = h.b(t_end);
      const Vec3 k1 = n_flow_rhs(n, b_start);
      const Vec3 k2 = n_flow_rhs(n + 0.5 * dt * k1, b_mid);
      const Vec3 k3 = n_flow_rhs(n + 0.5 * dt * k2, b_mid);
      const Vec3 k4 = n_flow_rhs(n + dt * k3, b_end);
      n += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (n.norm() > limit) {
        throw ChartSingularity("integrate_n_ode: |n| reached the chart boundary pi - " + std::to_string(kChartMargin) +
                                   " at t = " + std::to_string(t_end),
                               t_end);
      }
      b_start = b_end;
    }
    traj.times.push_back(b);
    traj.states.push_back(n);
    traj.phases.push_back(h.phase_integral(t0, b));
    traj.norm_defects.push_back(0.0);
  }
  return traj;
}

CVector evolve_pure_state(const CMatrix& u, const CVector& psi0) {
  if (u.rows() != psi0.size() || u.cols() != psi0.size()) {
    throw ConfigError("evolve_pure_state: propagator and state dimensions differ");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-12) {
    throw PreconditionError("evolve_pure_state: initial state is not normalized");
  }
  return u * psi0;
}

}  // namespace qevo
