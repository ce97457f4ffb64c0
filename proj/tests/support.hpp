#pragma once

#include <cmath>
#include <random>

#include "qevo/linalg.hpp"

namespace qevo::test {

inline RVector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal;
  RVector v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * normal(rng);
  return v;
}

inline CMatrix random_complex(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  CMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = cplx{normal(rng), normal(rng)};
  }
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int d) {
  const CMatrix m = random_complex(rng, d);
  return 0.5 * (m + m.adjoint());
}

inline CMatrix pauli(int k) {
  CMatrix s(2, 2);
  if (k == 0) s << 0.0, 1.0, 1.0, 0.0;
  if (k == 1) s << 0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0;
  if (k == 2) s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

}  // namespace qevo::test
