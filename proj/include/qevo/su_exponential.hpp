#pragma once

#include <array>
#include <vector>

#include "qevo/gellmann.hpp"
#include "qevo/linalg.hpp"

namespace qevo {

/// Margin below which the closed-form SU(3) denominators 1 − 2cos(2(φ + 2πk/3))
/// are considered degenerate and the spectral path is used instead.
inline constexpr double kSu3DegeneracyThreshold = 1e-3;

/// Norms below this use truncated power series.
inline constexpr double kSmallNorm = 1e-8;

// ---------------------------------------------------------------- d = 2

/// K₂(r) = 2 cos‖r‖.
double k2(const RVector& r);

/// ∇K₂(r) = −2 sin‖r‖ · r/‖r‖ (zero at r = 0).
RVector grad_k2(const RVector& r);

/// exp{−i (r·σ)}.
CMatrix exp_su2(const RVector& r);

// ---------------------------------------------------------------- d = 3

struct Su3Angles {
  double norm = 0.0;
  /// Principal branch, 3φ ∈ [−π/2, π/2].
  double phi = 0.0;
};

/// det(r·Λ) from the explicit cubic polynomial in the Gell-Mann coordinates.
double su3_det(const RVector& r);

/// ‖r‖ and φ(r) with sin 3φ = −(3√3 / 2‖r‖³) det(r·Λ).
Su3Angles su3_angles(const RVector& r);

/// Eigenvalues (2/√3)‖r‖ sin(φ + 2πk/3), k = 0, 1, 2. Returns zeros for r = 0.
std::array<double, 3> su3_eigenvalues(const RVector& r);

/// min_k |1 − 2cos(2(φ + 2πk/3))|; zero marks a degenerate spectrum.
double su3_degeneracy_margin(double phi);

/// p⁽ᵐ⁾(r) = Σ_ij r⁽ⁱ⁾ r⁽ʲ⁾ dsym_ijm / ‖r‖².
RVector su3_p_vector(const RVector& r);

/// K₃(r) = Σ_k exp{−i√2 ‖r‖ sin(φ + 2πk/3)}.
cplx k3(const RVector& r);

/// Closed-form gradient −3i√(2/3) (F₁ p + F₂ r/‖r‖).
/// Throws NumericError when r = 0 or the spectrum is (nearly) degenerate.
CVector grad_k3(const RVector& r);

/// exp{−i√(3/2)(r·Λ)} via the closed form, with spectral fallback near
/// eigenvalue degeneracies.
CMatrix exp_su3(const RVector& r);

// ---------------------------------------------------------------- general d

struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<CMatrix> projectors;
};

/// Spectral resolution of the Hermitian matrix r·Λ; eigenvalues closer than
/// `merge_tol` (relative to the spectral radius) share a projector.
SpectralData spectral_data(const RVector& r, const GellMannBasis& basis, double merge_tol = 1e-9);

/// exp{−i√(d/2)(r·Λ)} = Σ_m exp{−i√(d/2) λ_m} E(λ_m).
CMatrix exp_sud(const RVector& r, const GellMannBasis& basis);

/// K_d(r) = Σ_m k_m exp{−i√(d/2) λ_m}.
cplx kd(const RVector& r, const GellMannBasis& basis);

/// ∇K_d(r), computed as −i√(d/2) tr[Λ_j V_d(r)].
CVector grad_kd(const RVector& r, const GellMannBasis& basis);

/// Central finite-difference gradient of K_d.
CVector grad_kd_finite_difference(const RVector& r, const GellMannBasis& basis, double h = 1e-5);

}  // namespace qevo
