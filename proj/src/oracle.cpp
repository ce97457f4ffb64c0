#include "qevo/oracle.hpp"

#include <cmath>

#include "qevo/errors.hpp"

namespace qevo {

CMatrix midpoint_product(const BlochField& h, const GellMannBasis& basis, double t0, double t1, long steps) {
  if (steps < 2) throw ConfigError("oracle requires at least 2 steps");
  if (h.dimension != basis.dimension()) throw ConfigError("oracle: basis dimension mismatch");
  const int d = basis.dimension();
  const double dt = (t1 - t0) / static_cast<double>(steps);
  CMatrix u = CMatrix::Identity(d, d);
  for (long k = 0; k < steps; ++k) {
    const double mid = t0 + (static_cast<double>(k) + 0.5) * dt;
    u = hermitian_exp(hamiltonian_matrix(h, basis, mid), dt) * u;
  }
  return u;
}

OracleResult stepwise_propagator(const BlochField& h, const GellMannBasis& basis, double t0, double t1, long steps) {
  OracleResult out;
  out.steps = steps;
  out.U = midpoint_product(h, basis, t0, t1, steps);
  const CMatrix fine = midpoint_product(h, basis, t0, t1, 2 * steps);
  out.richardson_error_estimate = max_abs(out.U - fine) / 3.0;
  return out;
}

OracleResult stepwise_propagator(const HamiltonianSpec& h, const GellMannBasis& basis, double t0, double t1,
                                 long steps) {
  return stepwise_propagator(to_field(h), basis, t0, t1, steps);
}

OracleResult stepwise_propagator(const QuditHamiltonianSpec& h, const GellMannBasis& basis, double t0, double t1,
                                 long steps) {
  return stepwise_propagator(to_field(h), basis, t0, t1, steps);
}

UnitaryDistance unitary_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) throw ConfigError("unitary_distance: dimension mismatch");
  const cplx overlap = (v.adjoint() * u).trace();
  const cplx align = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return {max_abs(u - v), max_abs(u - align * v)};
}

}  // namespace qevo
