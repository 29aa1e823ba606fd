// Dense complex linear algebra over small composite Hilbert spaces.
//
// All operators are Eigen dense matrices. Composite systems carry a
// DimSignature listing the subsystem dimensions in tensor order; the
// first subsystem is the most significant digit of a basis index.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace concswap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when a numerical routine detects a state that cannot be a valid
/// density matrix (as opposed to a caller precondition violation).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kClampTol = 1e-12;
inline constexpr double kNegativeEigenTol = 1e-9;

class DimSignature {
 public:
  DimSignature() = default;
  DimSignature(std::initializer_list<std::size_t> dims);
  explicit DimSignature(std::vector<std::size_t> dims);

  static DimSignature uniform(std::size_t count, std::size_t dim);

  std::size_t size() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  const std::vector<std::size_t>& dims() const { return dims_; }

  /// Product of all subsystem dimensions.
  std::size_t total() const;

  DimSignature concat(const DimSignature& other) const;
  DimSignature select(std::span<const std::size_t> subsystems) const;

  friend bool operator==(const DimSignature&, const DimSignature&) = default;

 private:
  std::vector<std::size_t> dims_;
};

/// Kronecker product. Works for vectors and matrices of any scalar type.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
tensor(const Eigen::MatrixBase<DerivedA>& a,
       const Eigen::MatrixBase<DerivedB>& b) {
  using Result =
      Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result result = Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
  return result;
}

/// Column-vector Kronecker product.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1> tensor_vec(
    const Eigen::MatrixBase<DerivedA>& a,
    const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1> result =
      Eigen::kroneckerProduct(a.eval(), b.eval()).eval();
  return result;
}

namespace detail {

// Mixed-radix digits of a flat basis index, most significant first.
inline void unflatten(std::size_t index, const std::vector<std::size_t>& dims,
                      std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

inline std::vector<std::size_t> complement(std::span<const std::size_t> keep,
                                           std::size_t count) {
  std::vector<bool> kept(count, false);
  for (auto k : keep) {
    if (k >= count) throw std::invalid_argument("subsystem index out of range");
    if (kept[k]) throw std::invalid_argument("duplicate subsystem index");
    kept[k] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < count; ++k)
    if (!kept[k]) rest.push_back(k);
  return rest;
}

// new_index[i] for every old flat index i when subsystems are reordered so
// that new subsystem j is old subsystem order[j].
std::vector<std::size_t> permutation_map(const DimSignature& sig,
                                         std::span<const std::size_t> order);

}  // namespace detail

/// Reorders tensor factors of a state vector: subsystem j of the result is
/// subsystem order[j] of the input.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> permute_subsystems(
    const Eigen::MatrixBase<Derived>& v, const DimSignature& sig,
    std::span<const std::size_t> order) {
  if (static_cast<std::size_t>(v.size()) != sig.total() || v.cols() != 1)
    throw std::invalid_argument("permute_subsystems: dimension mismatch");
  const auto map = detail::permutation_map(sig, order);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out(v.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(map[i]) = v(i);
  return out;
}

/// Reorders tensor factors of an operator (rows and columns alike).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
permute_subsystems_op(const Eigen::MatrixBase<Derived>& m,
                      const DimSignature& sig,
                      std::span<const std::size_t> order) {
  if (static_cast<std::size_t>(m.rows()) != sig.total() || m.rows() != m.cols())
    throw std::invalid_argument("permute_subsystems_op: dimension mismatch");
  const auto map = detail::permutation_map(sig, order);
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      m.rows(), m.cols());
  for (std::size_t j = 0; j < map.size(); ++j)
    for (std::size_t i = 0; i < map.size(); ++i) out(map[i], map[j]) = m(i, j);
  return out;
}

/// Reduced operator on the subsystems listed in `keep` (kept in ascending
/// subsystem order regardless of the order given).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
partial_trace(const Eigen::MatrixBase<Derived>& m, const DimSignature& sig,
              std::span<const std::size_t> keep) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() ||
      static_cast<std::size_t>(m.rows()) != sig.total())
    throw std::invalid_argument("partial_trace: dimension mismatch");

  const auto traced = detail::complement(keep, sig.size());
  std::vector<std::size_t> kept_sorted;
  for (std::size_t k = 0; k < sig.size(); ++k)
    if (std::find(traced.begin(), traced.end(), k) == traced.end())
      kept_sorted.push_back(k);

  std::vector<std::size_t> order = kept_sorted;
  order.insert(order.end(), traced.begin(), traced.end());
  const auto permuted = permute_subsystems_op(m, sig, order);

  const std::size_t dk = sig.select(kept_sorted).total();
  const std::size_t dt = sig.total() / dk;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(dk, dk);
  for (std::size_t j = 0; j < dk; ++j)
    for (std::size_t i = 0; i < dk; ++i) {
      Scalar acc{0};
      for (std::size_t t = 0; t < dt; ++t) acc += permuted(i * dt + t, j * dt + t);
      out(i, j) = acc;
    }
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m,
                                   const DimSignature& sig,
                                   std::initializer_list<std::size_t> keep) {
  return partial_trace(m, sig, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// max |M - M^dagger| entrywise.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Real eigenvalues of a Hermitian matrix, sorted descending. With `clamp`,
/// eigenvalues in [-kClampTol, 0) are returned as 0.
RealVector hermitian_eigvals(const ComplexMatrix& m, bool clamp = false);

/// Hermitian positive semidefinite square root. Eigenvalues with magnitude
/// at most kClampTol are treated as zero; anything below -kNegativeEigenTol
/// throws NumericalError.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Gram matrix <v_i|v_j> of a family of vectors.
ComplexMatrix gram(std::span<const ComplexVector> vectors);

}  // namespace concswap
