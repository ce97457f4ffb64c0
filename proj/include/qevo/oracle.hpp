#pragma once

#include "qevo/gellmann.hpp"
#include "qevo/hamiltonian.hpp"
#include "qevo/linalg.hpp"

namespace qevo {

struct OracleResult {
  CMatrix U;
  long steps = 0;
  /// ‖U(steps) − U(2·steps)‖_max / 3, the order-2 Richardson estimate of the error in U.
  double richardson_error_estimate = 0.0;
};

/// Π_k exp(−i H(t_k^mid) Δt), later factors on the left. steps ≥ 2.
CMatrix midpoint_product(const BlochField& h, const GellMannBasis& basis, double t0, double t1, long steps);

/// Midpoint product plus a step-doubling error estimate.
OracleResult stepwise_propagator(const BlochField& h, const GellMannBasis& basis, double t0, double t1, long steps);
OracleResult stepwise_propagator(const HamiltonianSpec& h, const GellMannBasis& basis, double t0, double t1,
                                 long steps);
OracleResult stepwise_propagator(const QuditHamiltonianSpec& h, const GellMannBasis& basis, double t0, double t1,
                                 long steps);

struct UnitaryDistance {
  double max_abs = 0.0;
  /// min_φ ‖U − e^{iφ} V‖_max, φ = arg tr(V†U).
  double phase_invariant = 0.0;
};

UnitaryDistance unitary_distance(const CMatrix& u, const CMatrix& v);

}  // namespace qevo
