#pragma once

#include <cmath>
#include <vector>

#include "qevo/errors.hpp"

namespace qevo {

/// Time-stamped sequence of states plus per-row diagnostics.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  /// ∫_{t0}^{t} b₀ dτ at each row.
  std::vector<double> phases;
  /// Largest pre-renormalization defect of the scalar first integral over the
  /// integration steps that ended in this row's segment.
  std::vector<double> norm_defects;

  std::size_t size() const noexcept { return times.size(); }
  const State& back() const { return states.back(); }
};

struct IntegrationOptions {
  /// Spacing of recorded rows; 0 records every integration step.
  double output_stride = 0.0;
  /// Project back onto the scalar first integral after every step.
  bool renormalize = true;
};

/// Number of uniform steps of size ≤ `step` covering an interval of length `len`.
inline long count_steps(double len, double step) {
  const double ratio = len / step;
  const long n = static_cast<long>(std::ceil(ratio - 1e-9 * ratio));
  return n < 1 ? 1 : n;
}

/// Row times for an integration over [t0, t1]; every row is an integration
/// node, the last one is exactly t1.
inline std::vector<double> output_grid(double t0, double t1, double step, double stride) {
  if (!(t1 > t0)) throw ConfigError("integration interval requires t1 > t0");
  if (!(step > 0.0)) throw ConfigError("integration step must be positive");
  const double spacing = stride > 0.0 ? stride : step;
  const long rows = count_steps(t1 - t0, spacing);
  std::vector<double> grid(static_cast<std::size_t>(rows) + 1);
  for (long k = 0; k <= rows; ++k) grid[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * static_cast<double>(k) / rows;
  grid.back() = t1;
  return grid;
}

}  // namespace qevo
