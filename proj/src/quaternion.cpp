#include "qevo/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qevo/errors.hpp"

namespace qevo {

Eigen::Matrix4d skew_matrix(const Vec3& b) {
  Eigen::Matrix4d a;
  // clang-format off
  a <<  0.0,   b(0),  b(1),  b(2),
       -b(0),  0.0,  -b(2),  b(1),
       -b(1),  b(2),  0.0,  -b(0),
       -b(2), -b(1),  b(0),  0.0;
  // clang-format on
  return a;
}

CMatrix assemble_propagator(const QuaternionState& q, double phase) {
  if (std::abs(q.norm_defect()) > 1e-8) {
    throw PreconditionError("assemble_propagator: quaternion is not on the unit sphere (defect " +
                            std::to_string(q.norm_defect()) + ")");
  }
  // u₀ I + i(u₁σ₁ + u₂σ₂ + u₃σ₃)
  CMatrix u(2, 2);
  u(0, 0) = cplx{q.u0, q.u(2)};
  u(0, 1) = cplx{q.u(1), q.u(0)};
  u(1, 0) = cplx{-q.u(1), q.u(0)};
  u(1, 1) = cplx{q.u0, -q.u(2)};
  return std::exp(cplx{0.0, -phase}) * u;
}

QuaternionState compose(const QuaternionState& q_ts, const QuaternionState& q_st0) {
  QuaternionState out;
  out.u0 = q_ts.u0 * q_st0.u0 - q_ts.u.dot(q_st0.u);
  out.u = q_ts.u0 * q_st0.u + q_st0.u0 * q_ts.u - q_ts.u.cross(q_st0.u);
  return out;
}

double cocycle_residual(const QuaternionState& q_ts, const QuaternionState& q_st0, const QuaternionState& q_tt0) {
  const QuaternionState lhs = compose(q_ts, q_st0);
  return (lhs.to_vector() - q_tt0.to_vector()).cwiseAbs().maxCoeff();
}

Vec3 recover_n(const QuaternionState& q) {
  const double un = q.u.norm();
  if (un <= 1e-12) {
    if (q.u0 > 0.0) return Vec3::Zero();
    throw NumericError("recover_n: direction of n is undefined at u0 = -1");
  }
  const double angle = std::acos(std::clamp(q.u0, -1.0, 1.0));
  return -angle / un * q.u;
}

}  // namespace qevo
