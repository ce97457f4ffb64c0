#pragma once

#include <Eigen/Dense>

#include "qevo/hamiltonian.hpp"
#include "qevo/linalg.hpp"

namespace qevo {

/// Unit quaternion (u₀, ũ) parametrizing the SU(2) factor u₀ I + i ũ·σ of a
/// qubit propagator.
struct QuaternionState {
  double u0 = 1.0;
  Vec3 u = Vec3::Zero();

  static QuaternionState identity() { return {}; }
  static QuaternionState from_vector(const Eigen::Vector4d& q) { return {q(0), Vec3(q(1), q(2), q(3))}; }
  Eigen::Vector4d to_vector() const { return {u0, u(0), u(1), u(2)}; }

  /// u₀² + ‖ũ‖² − 1
  double norm_defect() const { return u0 * u0 + u.squaredNorm() - 1.0; }
};

/// The 4×4 skew-symmetric generator of dq/dt = A(t) q.
Eigen::Matrix4d skew_matrix(const Vec3& b);

/// U = e^{−i·phase} (u₀ I + i ũ·σ).
/// Throws PreconditionError if the quaternion is off the unit sphere by more than 1e−8.
CMatrix assemble_propagator(const QuaternionState& q, double phase);

/// Quaternion of U(t, t₀) = U(t, s) U(s, t₀), given q(t, s) and q(s, t₀).
QuaternionState compose(const QuaternionState& q_ts, const QuaternionState& q_st0);

/// max over the four components of |compose(q_ts, q_st0) − q_tt0|.
double cocycle_residual(const QuaternionState& q_ts, const QuaternionState& q_st0, const QuaternionState& q_tt0);

/// n with u₀ = cos‖n‖, ũ = −sin‖n‖ n/‖n‖, principal branch ‖n‖ ∈ [0, π].
/// Returns 0 for the identity; throws NumericError at u₀ = −1, where the direction is undefined.
Vec3 recover_n(const QuaternionState& q);

}  // namespace qevo
