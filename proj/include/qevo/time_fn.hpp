#pragma once

#include <variant>
#include <vector>

namespace qevo {

/// A scalar function of time with analytic first/second derivatives and an
/// analytic antiderivative.
class TimeFn {
 public:
  struct Constant {
    double value = 0.0;
  };
  /// a + b t
  struct Linear {
    double a = 0.0;
    double b = 0.0;
  };
  /// Σ_k c_k t^k
  struct Polynomial {
    std::vector<double> coefficients;
  };
  /// A sin(ω t + φ₀) + C
  struct Sinusoid {
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    double offset = 0.0;
  };
  using Variant = std::variant<Constant, Linear, Polynomial, Sinusoid>;

  TimeFn() : fn_(Constant{0.0}) {}
  TimeFn(Variant fn) : fn_(std::move(fn)) {}  // NOLINT(google-explicit-constructor)

  static TimeFn constant(double c) { return TimeFn(Constant{c}); }
  static TimeFn linear(double a, double b) { return TimeFn(Linear{a, b}); }
  static TimeFn polynomial(std::vector<double> c) { return TimeFn(Polynomial{std::move(c)}); }
  static TimeFn sinusoid(double amplitude, double omega, double phase, double offset) {
    return TimeFn(Sinusoid{amplitude, omega, phase, offset});
  }

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  /// ∫_a^b f(τ) dτ
  double integral(double a, double b) const;

  /// True when the function is identically zero.
  bool is_zero() const;

  const Variant& variant() const noexcept { return fn_; }

 private:
  Variant fn_;
};

}  // namespace qevo
