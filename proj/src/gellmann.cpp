#include "qevo/gellmann.hpp"

#include <cmath>
#include <string>

#include "qevo/errors.hpp"

namespace qevo {

namespace {

std::vector<CMatrix> standard_generators(int d) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d - 1));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix g = CMatrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      out.push_back(std::move(g));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix g = CMatrix::Zero(d, d);
      g(j, k) = -kI;
      g(k, j) = kI;
      out.push_back(std::move(g));
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix g = CMatrix::Zero(d, d);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int i = 0; i < l; ++i) g(i, i) = scale;
    g(l, l) = -l * scale;
    out.push_back(std::move(g));
  }
  return out;
}

// trace(a * b) without forming the product.
cplx trace_of_product(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.transpose().array()).sum();
}

}  // namespace

GellMannBasis::GellMannBasis(int dimension) : dim_(dimension) {
  if (dimension < 2) {
    throw ConfigError("invalid dimension " + std::to_string(dimension) + ": need d >= 2");
  }
  auto gens = standard_generators(dimension);
  if (dimension == 3) {
    // sym01 sym02 sym12 anti01 anti02 anti12 diag1 diag2 -> λ1..λ8
    constexpr int order[8] = {0, 3, 6, 1, 4, 2, 5, 7};
    std::vector<CMatrix> permuted;
    permuted.reserve(8);
    for (int idx : order) permuted.push_back(gens[static_cast<std::size_t>(idx)]);
    gens = std::move(permuted);
  }
  generators_ = std::move(gens);
}

CMatrix GellMannBasis::contract(const RVector& r) const {
  if (r.size() != size()) {
    throw ConfigError("coefficient vector has length " + std::to_string(r.size()) + ", basis expects " +
                      std::to_string(size()));
  }
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int j = 0; j < size(); ++j) {
    if (r(j) != 0.0) out += r(j) * generators_[static_cast<std::size_t>(j)];
  }
  return out;
}

CMatrix GellMannBasis::contract(const CVector& r) const {
  if (r.size() != size()) {
    throw ConfigError("coefficient vector has length " + std::to_string(r.size()) + ", basis expects " +
                      std::to_string(size()));
  }
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int j = 0; j < size(); ++j) {
    if (r(j) != cplx{}) out += r(j) * generators_[static_cast<std::size_t>(j)];
  }
  return out;
}

GellMannBasis build_basis(int dimension) { return GellMannBasis(dimension); }

StructureConstants::StructureConstants(int dimension, std::vector<TensorEntry> f, std::vector<TensorEntry> dsym)
    : dim_(dimension), n_(dimension * dimension - 1), f_(std::move(f)), d_(std::move(dsym)) {
  for (const auto& e : f_) f_index_.emplace(key(e.k, e.m, e.j), e.value);
  for (const auto& e : d_) d_index_.emplace(key(e.k, e.m, e.j), e.value);
}

double StructureConstants::f(int k, int m, int j) const {
  auto it = f_index_.find(key(k, m, j));
  return it == f_index_.end() ? 0.0 : it->second;
}

double StructureConstants::dsym(int k, int m, int j) const {
  auto it = d_index_.find(key(k, m, j));
  return it == d_index_.end() ? 0.0 : it->second;
}

StructureConstants structure_constants(const GellMannBasis& basis) {
  const int n = basis.size();
  const auto& g = basis.generators();
  std::vector<TensorEntry> f;
  std::vector<TensorEntry> dsym;
  for (int k = 0; k < n; ++k) {
    for (int m = k; m < n; ++m) {
      const CMatrix km = g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(m)];
      const CMatrix mk = g[static_cast<std::size_t>(m)] * g[static_cast<std::size_t>(k)];
      const CMatrix comm = km - mk;
      const CMatrix anti = km + mk;
      for (int j = 0; j < n; ++j) {
        const auto& gj = g[static_cast<std::size_t>(j)];
        if (k != m) {
          const double fv = (trace_of_product(comm, gj) / (4.0 * kI)).real();
          if (std::abs(fv) >= StructureConstants::kZeroThreshold) {
            f.push_back({k, m, j, fv});
            f.push_back({m, k, j, -fv});
          }
        }
        const double dv = 0.25 * trace_of_product(anti, gj).real();
        if (std::abs(dv) >= StructureConstants::kZeroThreshold) {
          dsym.push_back({k, m, j, dv});
          if (k != m) dsym.push_back({m, k, j, dv});
        }
      }
    }
  }
  return StructureConstants(basis.dimension(), std::move(f), std::move(dsym));
}

BlochDecomposition decompose(const CMatrix& a, const GellMannBasis& basis) {
  const int d = basis.dimension();
  if (a.rows() != d || a.cols() != d) {
    throw ConfigError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      ", basis dimension is " + std::to_string(d));
  }
  BlochDecomposition out;
  out.a0 = a.trace() / static_cast<double>(d);
  out.a.resize(basis.size());
  const double norm = 1.0 / std::sqrt(2.0 * d);
  for (int j = 0; j < basis.size(); ++j) {
    out.a(j) = norm * trace_of_product(a, basis[j]);
  }
  return out;
}

CMatrix reconstruct(const BlochDecomposition& dec, const GellMannBasis& basis) {
  const int d = basis.dimension();
  CMatrix out = dec.a0 * CMatrix::Identity(d, d);
  out += std::sqrt(d / 2.0) * basis.contract(dec.a);
  return out;
}

}  // namespace qevo
