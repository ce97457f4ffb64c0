#include "qevo/spline.hpp"

#include <cmath>
#include <string>

#include <gsl/gsl_errno.h>

#include "qevo/errors.hpp"

namespace qevo {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw ConfigError("spline: abscissa and ordinate counts differ");
  if (x_.size() < 4) throw ConfigError("spline: cubic interpolation needs at least 4 samples");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) throw ConfigError("spline: sample times must be strictly increasing");
  }
  gsl_set_error_handler_off();
  gsl_spline* raw = gsl_spline_alloc(gsl_interp_cspline, x_.size());
  if (raw == nullptr) throw NumericError("spline: allocation failed");
  if (gsl_spline_init(raw, x_.data(), y_.data(), x_.size()) != GSL_SUCCESS) {
    gsl_spline_free(raw);
    throw NumericError("spline: initialisation failed");
  }
  spline_ = std::shared_ptr<const gsl_spline>(raw, [](const gsl_spline* s) { gsl_spline_free(const_cast<gsl_spline*>(s)); });
}

void CubicSpline::check_range(double x) const {
  // allow rounding slack at the ends of the table
  const double slack = 1e-12 * (1.0 + std::abs(x_.back() - x_.front()));
  if (x < x_.front() - slack || x > x_.back() + slack) {
    throw NumericError("spline: t = " + std::to_string(x) + " outside the sampled interval [" +
                       std::to_string(x_.front()) + ", " + std::to_string(x_.back()) + "]");
  }
}

namespace {
double clamp_to(double x, double lo, double hi) { return x < lo ? lo : (x > hi ? hi : x); }
}  // namespace

double CubicSpline::operator()(double x) const {
  check_range(x);
  return gsl_spline_eval(spline_.get(), clamp_to(x, x_.front(), x_.back()), nullptr);
}

double CubicSpline::derivative(double x) const {
  check_range(x);
  return gsl_spline_eval_deriv(spline_.get(), clamp_to(x, x_.front(), x_.back()), nullptr);
}

double CubicSpline::integral(double a, double b) const {
  check_range(a);
  check_range(b);
  a = clamp_to(a, x_.front(), x_.back());
  b = clamp_to(b, x_.front(), x_.back());
  if (a == b) return 0.0;
  if (a > b) return -gsl_spline_eval_integ(spline_.get(), b, a, nullptr);
  return gsl_spline_eval_integ(spline_.get(), a, b, nullptr);
}

}  // namespace qevo
