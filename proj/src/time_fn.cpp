#include "qevo/time_fn.hpp"

#include <cmath>

namespace qevo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t k = 1; k < c.size(); ++k) out.push_back(static_cast<double>(k) * c[k]);
  return out;
}

}  // namespace

double TimeFn::value(double t) const {
  return std::visit(overloaded{
                        [](const Constant& f) { return f.value; },
                        [t](const Linear& f) { return f.a + f.b * t; },
                        [t](const Polynomial& f) { return horner(f.coefficients, t); },
                        [t](const Sinusoid& f) { return f.amplitude * std::sin(f.omega * t + f.phase) + f.offset; },
                    },
                    fn_);
}

double TimeFn::derivative(double t) const {
  return std::visit(overloaded{
                        [](const Constant&) { return 0.0; },
                        [](const Linear& f) { return f.b; },
                        [t](const Polynomial& f) { return horner(differentiate(f.coefficients), t); },
                        [t](const Sinusoid& f) { return f.amplitude * f.omega * std::cos(f.omega * t + f.phase); },
                    },
                    fn_);
}

double TimeFn::second_derivative(double t) const {
  return std::visit(overloaded{
                        [](const Constant&) { return 0.0; },
                        [](const Linear&) { return 0.0; },
                        [t](const Polynomial& f) { return horner(differentiate(differentiate(f.coefficients)), t); },
                        [t](const Sinusoid& f) {
                          return -f.amplitude * f.omega * f.omega * std::sin(f.omega * t + f.phase);
                        },
                    },
                    fn_);
}

double TimeFn::integral(double a, double b) const {
  return std::visit(overloaded{
                        [a, b](const Constant& f) { return f.value * (b - a); },
                        [a, b](const Linear& f) { return f.a * (b - a) + 0.5 * f.b * (b * b - a * a); },
                        [a, b](const Polynomial& f) {
                          std::vector<double> anti(f.coefficients.size() + 1, 0.0);
                          for (std::size_t k = 0; k < f.coefficients.size(); ++k) {
                            anti[k + 1] = f.coefficients[k] / static_cast<double>(k + 1);
                          }
                          return horner(anti, b) - horner(anti, a);
                        },
                        [a, b](const Sinusoid& f) {
                          const double linear = f.offset * (b - a);
                          if (f.omega == 0.0) return linear + f.amplitude * std::sin(f.phase) * (b - a);
                          return linear - f.amplitude / f.omega *
                                              (std::cos(f.omega * b + f.phase) - std::cos(f.omega * a + f.phase));
                        },
                    },
                    fn_);
}

bool TimeFn::is_zero() const {
  return std::visit(overloaded{
                        [](const Constant& f) { return f.value == 0.0; },
                        [](const Linear& f) { return f.a == 0.0 && f.b == 0.0; },
                        [](const Polynomial& f) {
                          for (double c : f.coefficients) {
                            if (c != 0.0) return false;
                          }
                          return true;
                        },
                        [](const Sinusoid& f) {
                          return f.offset == 0.0 && (f.amplitude == 0.0 || (f.omega == 0.0 && std::sin(f.phase) == 0.0));
                        },
                    },
                    fn_);
}

}  // namespace qevo
