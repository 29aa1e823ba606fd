#include "concswap/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace concswap {

DimSignature::DimSignature(std::initializer_list<std::size_t> dims)
    : DimSignature(std::vector<std::size_t>(dims)) {}

DimSignature::DimSignature(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_)
    if (d < 2) throw std::invalid_argument("subsystem dimension must be >= 2");
}

DimSignature DimSignature::uniform(std::size_t count, std::size_t dim) {
  return DimSignature(std::vector<std::size_t>(count, dim));
}

std::size_t DimSignature::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

DimSignature DimSignature::concat(const DimSignature& other) const {
  auto dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return DimSignature(std::move(dims));
}

DimSignature DimSignature::select(std::span<const std::size_t> subsystems) const {
  std::vector<std::size_t> dims;
  dims.reserve(subsystems.size());
  for (auto k : subsystems) dims.push_back(dims_.at(k));
  return DimSignature(std::move(dims));
}

namespace detail {

std::vector<std::size_t> permutation_map(const DimSignature& sig,
                                         std::span<const std::size_t> order) {
  const std::size_t n = sig.size();
  if (order.size() != n || !complement(order, n).empty())
    throw std::invalid_argument("permutation must list every subsystem once");

  // Strides of the new layout, indexed by old subsystem.
  std::vector<std::size_t> stride(n);
  std::size_t s = 1;
  for (std::size_t j = n; j-- > 0;) {
    stride[order[j]] = s;
    s *= sig[order[j]];
  }

  std::vector<std::size_t> map(sig.total());
  std::vector<std::size_t> digits;
  for (std::size_t i = 0; i < map.size(); ++i) {
    unflatten(i, sig.dims(), digits);
    std::size_t target = 0;
    for (std::size_t k = 0; k < n; ++k) target += digits[k] * stride[k];
    map[i] = target;
  }
  return map;
}

}  // namespace detail

RealVector hermitian_eigvals(const ComplexMatrix& m, bool clamp) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eigvals: matrix is not square");
  if (hermiticity_defect(m) > kHermitianTol)
    throw std::invalid_argument("hermitian_eigvals: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eigvals: eigensolver did not converge");
  RealVector values = solver.eigenvalues().reverse();
  if (clamp)
    for (auto& v : values)
      if (v < 0.0 && v >= -kClampTol) v = 0.0;
  return values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("psd_sqrt: matrix is not square");
  if (hermiticity_defect(m) > kHermitianTol)
    throw std::invalid_argument("psd_sqrt: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericalError("psd_sqrt: eigensolver did not converge");
  RealVector values = solver.eigenvalues();
  for (auto& v : values) {
    if (v < -kNegativeEigenTol)
      throw NumericalError("psd_sqrt: matrix has a negative eigenvalue");
    v = std::abs(v) <= kClampTol ? 0.0 : std::sqrt(std::max(v, 0.0));
  }
  const auto& vecs = solver.eigenvectors();
  ComplexMatrix root = vecs * values.asDiagonal() * vecs.adjoint();
  // Restore exact Hermiticity lost to rounding in the reconstruction.
  return (root + root.adjoint()) * 0.5;
}

ComplexMatrix gram(std::span<const ComplexVector> vectors) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = vectors[i].dot(vectors[j]);
  return g;
}

}  // namespace concswap
