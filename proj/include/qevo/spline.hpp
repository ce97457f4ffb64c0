#pragma once

#include <memory>
#include <vector>

#include <gsl/gsl_spline.h>

namespace qevo {

/// Natural cubic spline through (x_i, y_i), backed by GSL. Immutable after
/// construction; evaluation is safe from multiple threads.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  double integral(double a, double b) const;

  double front() const noexcept { return x_.front(); }
  double back() const noexcept { return x_.back(); }

 private:
  void check_range(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::shared_ptr<const gsl_spline> spline_;
};

}  // namespace qevo
