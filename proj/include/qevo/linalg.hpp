#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qevo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Largest entry modulus of a complex matrix.
inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// ‖U†U − I‖ in the max-entry norm.
inline double unitarity_defect(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

/// exp(−i·c·H) for Hermitian H via eigendecomposition.
inline CMatrix hermitian_exp(const CMatrix& h, double c) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto& vals = es.eigenvalues();
  CVector phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    phases(k) = std::exp(cplx{0.0, -c * vals(k)});
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace qevo
