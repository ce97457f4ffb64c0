#include "qevo/su_exponential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qevo/errors.hpp"

namespace qevo {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

void require_length(const RVector& r, Eigen::Index n, const char* what) {
  if (r.size() != n) {
    throw ConfigError(std::string(what) + ": expected a vector of length " + std::to_string(n) + ", got " +
                      std::to_string(r.size()));
  }
}

const GellMannBasis& su3_basis() {
  static const GellMannBasis basis(3);
  return basis;
}

const StructureConstants& su3_constants() {
  static const StructureConstants constants = structure_constants(su3_basis());
  return constants;
}

const std::vector<CMatrix>& pauli() {
  static const std::vector<CMatrix> sigma = GellMannBasis(2).generators();
  return sigma;
}

}  // namespace

double k2(const RVector& r) {
  require_length(r, 3, "k2");
  return 2.0 * std::cos(r.norm());
}

RVector grad_k2(const RVector& r) {
  require_length(r, 3, "grad_k2");
  const double n = r.norm();
  if (n < kSmallNorm) return -2.0 * r;  // sin(x)/x -> 1
  return -2.0 * std::sin(n) / n * r;
}

CMatrix exp_su2(const RVector& r) {
  require_length(r, 3, "exp_su2");
  const auto& s = pauli();
  const CMatrix rs = r(0) * s[0] + r(1) * s[1] + r(2) * s[2];
  const double n = r.norm();
  const CMatrix id = CMatrix::Identity(2, 2);
  if (n < kSmallNorm) {
    return id - kI * rs - 0.5 * n * n * id;
  }
  return std::cos(n) * id - kI * (std::sin(n) / n) * rs;
}

double su3_det(const RVector& r) {
  require_length(r, 8, "su3_det");
  const double r1 = r(0), r2 = r(1), r3 = r(2), r4 = r(3), r5 = r(4), r6 = r(5), r7 = r(6), r8 = r(7);
  return 2.0 * (r1 * r4 * r6 + r1 * r5 * r7 + r2 * r5 * r6 - r2 * r4 * r7) +
         r8 / kSqrt3 * (2.0 * (r1 * r1 + r2 * r2 + r3 * r3) - r4 * r4 - r5 * r5 - r6 * r6 - r7 * r7) +
         r3 * (r4 * r4 + r5 * r5 - r6 * r6 - r7 * r7) - 2.0 / (3.0 * kSqrt3) * r8 * r8 * r8;
}

Su3Angles su3_angles(const RVector& r) {
  require_length(r, 8, "su3_angles");
  Su3Angles out;
  out.norm = r.norm();
  if (out.norm == 0.0) return out;
  const double s = -3.0 * kSqrt3 / (2.0 * out.norm * out.norm * out.norm) * su3_det(r);
  out.phi = std::asin(std::clamp(s, -1.0, 1.0)) / 3.0;
  return out;
}

std::array<double, 3> su3_eigenvalues(const RVector& r) {
  const auto [norm, phi] = su3_angles(r);
  std::array<double, 3> out{};
  if (norm == 0.0) return out;
  for (int k = 0; k < 3; ++k) {
    out[static_cast<std::size_t>(k)] = 2.0 / kSqrt3 * norm * std::sin(phi + 2.0 * kPi * k / 3.0);
  }
  return out;
}

double su3_degeneracy_margin(double phi) {
  double margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    margin = std::min(margin, std::abs(1.0 - 2.0 * std::cos(2.0 * (phi + 2.0 * kPi * k / 3.0))));
  }
  return margin;
}

RVector su3_p_vector(const RVector& r) {
  require_length(r, 8, "su3_p_vector");
  RVector p = RVector::Zero(8);
  const double n2 = r.squaredNorm();
  if (n2 == 0.0) return p;
  for (const auto& e : su3_constants().d_entries()) {
    p(e.j) += r(e.k) * r(e.m) * e.value;
  }
  return p / n2;
}

cplx k3(const RVector& r) {
  const auto [norm, phi] = su3_angles(r);
  if (norm < kSmallNorm) {
    // tr exp(−icM) = 3 − (c²/2) tr M² + O(‖r‖³), tr M² = 2‖r‖², c² = 3/2
    return {3.0 - 1.5 * norm * norm, 0.0};
  }
  cplx sum{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    sum += std::exp(cplx{0.0, -kSqrt2 * norm * std::sin(phi + 2.0 * kPi * k / 3.0)});
  }
  return sum;
}

CVector grad_k3(const RVector& r) {
  const auto [norm, phi] = su3_angles(r);
  if (norm < kSmallNorm) throw NumericError("grad_k3: closed form undefined at r = 0");
  if (su3_degeneracy_margin(phi) < kSu3DegeneracyThreshold) {
    throw NumericError("grad_k3: degenerate spectrum (closed-form denominator below threshold)");
  }
  cplx f1{0.0, 0.0};
  cplx f2{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    const double x = phi + 2.0 * kPi * k / 3.0;
    const cplx e = std::exp(cplx{0.0, -kSqrt2 * norm * std::sin(x)});
    const double den = 1.0 - 2.0 * std::cos(2.0 * x);
    f1 += e / den;
    f2 += 2.0 / kSqrt3 * std::sin(x) * e / den;
  }
  const RVector p = su3_p_vector(r);
  const cplx pref = -3.0 * kI * std::sqrt(2.0 / 3.0);
  return pref * (f1 * p.cast<cplx>() + f2 * (r / norm).cast<cplx>());
}

CMatrix exp_su3(const RVector& r) {
  require_length(r, 8, "exp_su3");
  const auto& basis = su3_basis();
  const auto [norm, phi] = su3_angles(r);
  const CMatrix m = basis.contract(r);
  const CMatrix id = CMatrix::Identity(3, 3);
  if (norm < kSmallNorm) {
    const double c = std::sqrt(1.5);
    return id - kI * c * m - 0.5 * c * c * (m * m);
  }
  if (su3_degeneracy_margin(phi) < kSu3DegeneracyThreshold) {
    return exp_sud(r, basis);
  }
  const CMatrix m2 = (m * m) / (norm * norm);
  CMatrix out = CMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) {
    const double x = phi + 2.0 * kPi * k / 3.0;
    const CMatrix bracket = m2 + (2.0 * std::sin(x) / (kSqrt3 * norm)) * m - id * ((1.0 + 2.0 * std::cos(2.0 * x)) / 3.0);
    const cplx weight = std::exp(cplx{0.0, -kSqrt2 * norm * std::sin(x)}) / (1.0 - 2.0 * std::cos(2.0 * x));
    out += weight * bracket;
  }
  return out;
}

SpectralData spectral_data(const RVector& r, const GellMannBasis& basis, double merge_tol) {
  const CMatrix m = basis.contract(r);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const RVector& vals = es.eigenvalues();
  const CMatrix& vecs = es.eigenvectors();
  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  SpectralData out;
  const int d = basis.dimension();
  for (int i = 0; i < d;) {
    int j = i + 1;
    while (j < d && vals(j) - vals(j - 1) <= merge_tol * scale) ++j;
    double mean = 0.0;
    CMatrix proj = CMatrix::Zero(d, d);
    for (int k = i; k < j; ++k) {
      mean += vals(k);
      proj += vecs.col(k) * vecs.col(k).adjoint();
    }
    out.eigenvalues.push_back(mean / (j - i));
    out.multiplicities.push_back(j - i);
    out.projectors.push_back(std::move(proj));
    i = j;
  }
  return out;
}

CMatrix exp_sud(const RVector& r, const GellMannBasis& basis) {
  const int d = basis.dimension();
  const SpectralData sd = spectral_data(r, basis);
  CMatrix out = CMatrix::Zero(d, d);
  const double c = std::sqrt(d / 2.0);
  for (std::size_t m = 0; m < sd.eigenvalues.size(); ++m) {
    out += std::exp(cplx{0.0, -c * sd.eigenvalues[m]}) * sd.projectors[m];
  }
  return out;
}

cplx kd(const RVector& r, const GellMannBasis& basis) {
  const SpectralData sd = spectral_data(r, basis);
  const double c = std::sqrt(basis.dimension() / 2.0);
  cplx sum{0.0, 0.0};
  for (std::size_t m = 0; m < sd.eigenvalues.size(); ++m) {
    sum += static_cast<double>(sd.multiplicities[m]) * std::exp(cplx{0.0, -c * sd.eigenvalues[m]});
  }
  return sum;
}

CVector grad_kd(const RVector& r, const GellMannBasis& basis) {
  const CMatrix v = exp_sud(r, basis);
  const cplx pref = -kI * std::sqrt(basis.dimension() / 2.0);
  CVector g(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    g(j) = pref * (basis[j] * v).trace();
  }
  return g;
}

CVector grad_kd_finite_difference(const RVector& r, const GellMannBasis& basis, double h) {
  CVector g(basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    RVector plus = r;
    RVector minus = r;
    plus(j) += h;
    minus(j) -= h;
    g(j) = (kd(plus, basis) - kd(minus, basis)) / (2.0 * h);
  }
  return g;
}

}  // namespace qevo
