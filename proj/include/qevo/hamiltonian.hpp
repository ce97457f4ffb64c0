#pragma once

#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qevo/gellmann.hpp"
#include "qevo/linalg.hpp"
#include "qevo/spline.hpp"
#include "qevo/time_fn.hpp"

namespace qevo {

using Vec3 = Eigen::Vector3d;

/// Table of samples (t_i, b₀(t_i), b(t_i)) interpolated by natural cubic splines.
class SampledTable {
 public:
  /// `bvals[i]` holds the vector b at `times[i]`; all rows must have the same length.
  SampledTable(std::vector<double> times, std::vector<double> b0vals, std::vector<std::vector<double>> bvals);

  int components() const noexcept { return static_cast<int>(b_.size()); }
  double t_first() const noexcept { return times_.front(); }
  double t_last() const noexcept { return times_.back(); }
  const std::vector<double>& times() const noexcept { return times_; }

  double b0(double t) const { return b0_(t); }
  double b0_integral(double a, double b) const { return b0_.integral(a, b); }
  RVector b(double t) const;
  RVector b_dot(double t) const;
  RVector b_integral(double a, double b) const;

 private:
  std::vector<double> times_;
  CubicSpline b0_;
  std::vector<CubicSpline> b_;
};

/// Qubit Hamiltonian H(t) = b₀(t) I + b(t)·σ, by family.
class HamiltonianSpec {
 public:
  struct Constant {
    double b0 = 0.0;
    Vec3 b = Vec3::Zero();
  };
  /// b(t) = bnorm(t) e_b with a fixed unit vector e_b.
  struct FixedAxis {
    Vec3 e_b = Vec3::UnitZ();
    TimeFn bnorm;
    TimeFn b0;
  };
  /// ‖b‖ = b, θ_b = theta, φ_b(t) = omega t + eta.
  struct RotatingField {
    double b = 1.0;
    double theta = 0.0;
    double omega = 0.0;
    double eta = 0.0;
    TimeFn b0;
  };
  /// b(t) = (φ̇/λ)(q cos φ, q sin φ, p), requiring φ̇/λ > 0.
  struct PhiDriven {
    double q = 0.0;
    double p = 0.0;
    double lambda = 1.0;
    TimeFn phi;
    TimeFn b0;
  };
  struct Sampled {
    SampledTable table;
  };
  using Family = std::variant<Constant, FixedAxis, RotatingField, PhiDriven, Sampled>;

  HamiltonianSpec(Family family);  // NOLINT(google-explicit-constructor)
  template <class F>
    requires(!std::is_same_v<std::decay_t<F>, HamiltonianSpec> && !std::is_same_v<std::decay_t<F>, Family> &&
             std::is_constructible_v<Family, F>)
  HamiltonianSpec(F&& f) : HamiltonianSpec(Family(std::forward<F>(f))) {}  // NOLINT(google-explicit-constructor)

  const Family& family() const noexcept { return family_; }
  std::string family_name() const;

  double b0(double t) const;
  Vec3 b(double t) const;
  Vec3 b_dot(double t) const;

  /// ∫_{t0}^{t1} b₀ dτ
  double phase_integral(double t0, double t1) const;
  /// ∫_{t0}^{t1} b dτ
  Vec3 b_integral(double t0, double t1) const;

  /// Azimuth φ_b(t) when the family defines it analytically.
  std::optional<double> analytic_azimuth(double t) const;
  /// φ̇_b(t) when the family defines it analytically.
  std::optional<double> analytic_azimuth_rate(double t) const;

 private:
  Family family_;
};

/// Qudit Hamiltonian H(t) = b₀(t) I + √(d/2) b(t)·Λ.
class QuditHamiltonianSpec {
 public:
  QuditHamiltonianSpec(int dimension, TimeFn b0, std::vector<TimeFn> b);
  QuditHamiltonianSpec(int dimension, SampledTable table);

  int dimension() const noexcept { return dim_; }
  int components() const noexcept { return dim_ * dim_ - 1; }

  double b0(double t) const;
  RVector b(double t) const;
  double phase_integral(double t0, double t1) const;
  RVector b_integral(double t0, double t1) const;

 private:
  int dim_;
  TimeFn b0_;
  std::variant<std::vector<TimeFn>, SampledTable> b_;
};

/// Type-erased coefficient field (b₀(t), b(t)) in a fixed dimension.
struct BlochField {
  int dimension = 2;
  std::function<double(double)> b0;
  std::function<RVector(double)> b;
  std::function<double(double, double)> phase_integral;
};

BlochField to_field(const HamiltonianSpec& h);
BlochField to_field(const QuditHamiltonianSpec& h);

/// H(t) = b₀ I + √(d/2) b·Λ as a dense matrix, given a basis of the right dimension.
CMatrix hamiltonian_matrix(const BlochField& field, const GellMannBasis& basis, double t);

}  // namespace qevo
