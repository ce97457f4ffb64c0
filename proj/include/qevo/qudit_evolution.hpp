#pragma once

#include <vector>

#include "qevo/gellmann.hpp"
#include "qevo/hamiltonian.hpp"
#include "qevo/linalg.hpp"
#include "qevo/trajectory.hpp"

namespace qevo {

/// Propagator coordinates U = e^{−i·phase}(u₀ I + i√(d/2) ũ·Λ).
struct QuditCoords {
  cplx u0{1.0, 0.0};
  CVector u;

  static QuditCoords identity(int components) { return {cplx{1.0, 0.0}, CVector::Zero(components)}; }
  double norm_defect() const { return std::norm(u0) + u.squaredNorm() - 1.0; }
};

struct QuditTrajectory : Trajectory<QuditCoords> {
  /// Largest bilinear first-integral residual seen during the steps of each row.
  std::vector<double> vector_residuals;
};

struct FirstIntegralResiduals {
  /// |u₀|² + ‖ũ‖² − 1 (signed).
  double scalar_residual = 0.0;
  /// |u₀ u_j* + u₀* u_j + √(d/2) Σ (dsym_kmj + i f_kmj) u_k u_m*| with u = iũ.
  RVector vector_residuals;

  double max_vector() const { return vector_residuals.size() ? vector_residuals.maxCoeff() : 0.0; }
};

FirstIntegralResiduals first_integral_residuals(const QuditCoords& c, const StructureConstants& sc);

/// Generator G(b) of d/dt (u₀, ũ) = G(b) (u₀, ũ):
///   u̇₀ = b·ũ,  ũ̇_j = −u₀ b_j + √(d/2) Σ_km (f_kmj − i dsym_kmj) b_k ũ_m.
CMatrix gellmann_generator(const RVector& b, const StructureConstants& sc);

/// RK4 on the complex coordinates from (1, 0), with scalar renormalization after each step
/// (when enabled). Bilinear first integrals are recorded but not enforced.
QuditTrajectory integrate_gellmann_ode(const BlochField& h, const StructureConstants& sc, double t0, double t1,
                                       double step, const IntegrationOptions& options = {});
QuditTrajectory integrate_gellmann_ode(const QuditHamiltonianSpec& h, const StructureConstants& sc, double t0,
                                       double t1, double step, const IntegrationOptions& options = {});

/// Throws PreconditionError if |u₀|² + ‖ũ‖² is off by more than 1e−8.
CMatrix assemble_qudit_propagator(const QuditCoords& c, double phase, const GellMannBasis& basis);

struct CommutingResult {
  bool commuting = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

/// max over grid and j of |Σ_km f_kmj b_k(tᵢ) (∫_{t0}^{tᵢ} b_m)|, accepted below 1e−9 · max‖b‖² · (t1 − t0).
CommutingResult commuting_check_general(const QuditHamiltonianSpec& h, const StructureConstants& sc, double t0,
                                        double t1, int samples = 64);

/// e^{−i∫b₀} exp{−i√(d/2)(∫b)·Λ}; exact only for the commuting class.
CMatrix commuting_closed_form_general(const QuditHamiltonianSpec& h, const GellMannBasis& basis, double t0, double t1);

/// ‖exp{−i√(d/2) n·Λ} − (K_d/d · I + i√(d/2)(∇K_d/d)·Λ)‖_max.
/// d = 2, 3 use the closed forms of K and ∇K; other d use the spectral K with finite differences.
double forward_map_check(const RVector& n, const GellMannBasis& basis);

}  // namespace qevo
