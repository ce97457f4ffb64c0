#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qevo/linalg.hpp"

namespace qevo {

/// The d²−1 generalized Gell-Mann matrices of SU(d).
///
/// Generators are Hermitian, traceless and satisfy tr(Λ_k Λ_m) = 2δ_km.
/// Indices are zero-based: generators()[0] is Λ₁.
///
/// Ordering: all symmetric pairs E_jk + E_kj (j < k, row-major), then all
/// antisymmetric pairs −i(E_jk − E_kj), then the d−1 diagonal generators.
/// For d = 2 this is (σ₁, σ₂, σ₃); for d = 3 the set is permuted into the
/// conventional λ₁ … λ₈ numbering.
class GellMannBasis {
 public:
  explicit GellMannBasis(int dimension);

  int dimension() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(generators_.size()); }
  const std::vector<CMatrix>& generators() const noexcept { return generators_; }
  const CMatrix& operator[](int j) const { return generators_.at(static_cast<std::size_t>(j)); }

  /// Σ_j r_j Λ_j for a real or complex coefficient vector.
  CMatrix contract(const RVector& r) const;
  CMatrix contract(const CVector& r) const;

 private:
  int dim_;
  std::vector<CMatrix> generators_;
};

GellMannBasis build_basis(int dimension);

struct TensorEntry {
  int k;
  int m;
  int j;
  double value;
};

/// Sparse antisymmetric (f) and symmetric (dsym) structure constants,
///   Λ_k Λ_m = (2/d) δ_km I + Σ_j (dsym_kmj + i f_kmj) Λ_j.
/// Entries below kZeroThreshold in magnitude are not stored.
class StructureConstants {
 public:
  static constexpr double kZeroThreshold = 1e-12;

  StructureConstants(int dimension, std::vector<TensorEntry> f, std::vector<TensorEntry> dsym);

  int dimension() const noexcept { return dim_; }
  int size() const noexcept { return n_; }
  const std::vector<TensorEntry>& f_entries() const noexcept { return f_; }
  const std::vector<TensorEntry>& d_entries() const noexcept { return d_; }

  double f(int k, int m, int j) const;
  double dsym(int k, int m, int j) const;

 private:
  std::int64_t key(int k, int m, int j) const noexcept {
    return (static_cast<std::int64_t>(k) * n_ + m) * n_ + j;
  }

  int dim_;
  int n_;
  std::vector<TensorEntry> f_;
  std::vector<TensorEntry> d_;
  std::unordered_map<std::int64_t, double> f_index_;
  std::unordered_map<std::int64_t, double> d_index_;
};

/// f_kmj = (1/4i) tr([Λ_k, Λ_m] Λ_j),  dsym_kmj = (1/4) tr({Λ_k, Λ_m} Λ_j).
StructureConstants structure_constants(const GellMannBasis& basis);

/// Coordinates of an operator in the representation A = a₀ I + √(d/2) a·Λ.
struct BlochDecomposition {
  cplx a0{0.0, 0.0};
  CVector a;
};

BlochDecomposition decompose(const CMatrix& a, const GellMannBasis& basis);
CMatrix reconstruct(const BlochDecomposition& dec, const GellMannBasis& basis);

}  // namespace qevo
