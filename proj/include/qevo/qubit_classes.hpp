#pragma once

#include <string>
#include <vector>

#include "qevo/hamiltonian.hpp"
#include "qevo/quaternion.hpp"

namespace qevo {

enum class ClassKind { None, Commuting, Theorem3 };

std::string to_string(ClassKind kind);

struct ClassCertificate {
  ClassKind kind = ClassKind::None;
  // J₁, J₂ at t₀; theorem3 certificates only.
  double J1 = 0.0;
  double J2 = 0.0;
  std::vector<double> sample_times;
  std::vector<double> omega_samples;
  double max_J_drift = 0.0;
  // Commuting: max ‖b(tᵢ) × ∫b‖ over the grid.
  double residual = 0.0;
  double tolerance = 0.0;
};

inline constexpr int kDefaultClassSamples = 64;
inline constexpr double kTheorem3Tolerance = 1e-9;

/// Accepts when max_i ‖b(tᵢ) × ∫_{t0}^{tᵢ} b‖ ≤ 1e−9 · max‖b‖² · (t1 − t0).
/// Requires samples ≥ 16.
ClassCertificate commuting_check(const HamiltonianSpec& h, double t0, double t1, int samples = kDefaultClassSamples);

/// n = ∫b dτ, u₀ = cos‖n‖, ũ = −sin‖n‖ n/‖n‖. Exact only for the commuting class; not checked here.
QuaternionState commuting_closed_form(const HamiltonianSpec& h, double t0, double t1);

struct SphericalTrack {
  std::vector<double> times;
  std::vector<double> bnorm;
  std::vector<double> theta;
  /// Unwrapped azimuth.
  std::vector<double> phi;
  std::vector<double> phi_dot;
};

/// Samples (‖b‖, θ_b, φ_b, φ̇_b) on a uniform grid of `samples` + 1 points.
/// Throws PreconditionError where ‖b‖ = 0 or b lies on the x₃ axis.
SphericalTrack to_spherical(const HamiltonianSpec& h, double t0, double t1, int samples = kDefaultClassSamples);

/// Pointwise invariants of the theorem3 class.
struct Theorem3Invariants {
  double J1 = 0.0;
  double J2 = 0.0;
  double omega_b = 0.0;
  /// ‖b‖Ω_b = √((b₃ − φ̇/2)² + b₁² + b₂²)
  double rate = 0.0;
};

Theorem3Invariants theorem3_invariants(double bnorm, double theta, double phi_dot);

/// Theorem3 iff J₁, J₂ stay within `tolerance` of their t₀ values on the grid.
/// Throws PreconditionError if ‖b‖Ω_b vanishes on the grid.
ClassCertificate class_certificate_theorem3(const HamiltonianSpec& h, double t0, double t1,
                                            int samples = kDefaultClassSamples,
                                            double tolerance = kTheorem3Tolerance);

struct RotatingFieldParams {
  double J1 = 0.0;
  double J2 = 0.0;
  double Omega_b = 0.0;
  /// √((2b cosθ − ω)² + 4b² sin²θ) = 2bΩ_b
  double Omega_tilde = 0.0;
};

RotatingFieldParams rotating_field_params(const HamiltonianSpec::RotatingField& f);

struct PhiDrivenParams {
  double zeta = 0.0;
  double J1 = 0.0;
  double J2 = 0.0;
};

PhiDrivenParams phi_driven_params(const HamiltonianSpec::PhiDriven& f);

/// γ_b(t1, t0) = ∫ ‖b‖Ω_b dτ.
double gamma_b(const HamiltonianSpec& h, double t0, double t1);

/// φ_b(t1) − φ_b(t0) along a continuous branch.
double azimuth_change(const HamiltonianSpec& h, double t0, double t1);

/// The four theorem3 closed-form components from the invariants and angles.
QuaternionState theorem3_closed_form(double J1, double J2, double phi_t, double phi_t0, double gamma);

/// Closed-form propagator quaternion for h, assuming h is in the class.
QuaternionState theorem3_closed_form(const HamiltonianSpec& h, double t0, double t1);

/// Amplitudes of U(t, 0)|0⟩ for the rotating field, including the b₀ phase:
/// (cos γ − iJ₁ sin γ) e^{−iωt/2} |0⟩ − iJ₂ sin γ e^{i(ωt/2 + η)} |1⟩, γ = bΩ_b t.
CVector rotating_field_pure_state(const HamiltonianSpec::RotatingField& f, double t);

}  // namespace qevo
