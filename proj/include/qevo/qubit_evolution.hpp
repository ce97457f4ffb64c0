#pragma once

#include "qevo/hamiltonian.hpp"
#include "qevo/quaternion.hpp"
#include "qevo/trajectory.hpp"

namespace qevo {

using QuaternionTrajectory = Trajectory<QuaternionState>;
using NTrajectory = Trajectory<Vec3>;

/// Fixed-step classical RK4 for dq/dt = A(t) q, q(t₀) = (1, 0, 0, 0).
QuaternionTrajectory integrate_quaternion(const HamiltonianSpec& h, double t0, double t1, double step,
                                          const IntegrationOptions& options = {});

/// ∫_{t0}^{t1} b₀(τ) dτ.
double phase_integral(const HamiltonianSpec& h, double t0, double t1);

/// Thrown when the n-flow leaves the chart ‖n‖ < π − kChartMargin.
class ChartSingularity : public NumericError {
 public:
  ChartSingularity(const std::string& what, double time) : NumericError(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

inline constexpr double kChartMargin = 0.05;

inline constexpr double kNFlowSeriesCutoff = 1e-2;

/// (1 − x cot x)/x² = 1/3 + x²/45 + 2x⁴/945 + x⁶/4725 + 2x⁸/93555 + O(x¹⁰).
double n_flow_coefficient_series(double x);
/// (1 − x cot x)/x² evaluated directly; loses accuracy as x → 0.
double n_flow_coefficient_direct(double x);
/// Series below kNFlowSeriesCutoff, direct above.
double n_flow_coefficient(double x);

/// RHS of dn/dt = b + b×n − c(‖n‖) n×(b×n), the flow of n with U = exp{−i n·σ}.
Vec3 n_flow_rhs(const Vec3& n, const Vec3& b);

/// RK4 for the rotation-vector flow n(t), n(t₀) = 0.
/// Throws ChartSingularity when ‖n‖ exceeds π − kChartMargin.
NTrajectory integrate_n_ode(const HamiltonianSpec& h, double t0, double t1, double step,
                            const IntegrationOptions& options = {});

/// ψ(t) = U ψ₀; ψ₀ must be normalized within 1e−12.
CVector evolve_pure_state(const CMatrix& u, const CVector& psi0);

}  // namespace qevo
