// State families used in the swapping protocols: Schmidt-form pure pairs,
// depolarized qubit pairs and isotropic qudit pairs.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "concswap/linalg.hpp"

namespace concswap {

/// Schmidt coefficients of a bipartite pure state, stored descending.
///
/// Input order is free; ties keep their input order. A sum that misses 1 by
/// more than 1e-9 is rejected, smaller misses are renormalized.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> coeffs);

  /// Two-term spectrum (lam0, 1 - lam0).
  static SchmidtSpectrum qubit(double lam0);
  static SchmidtSpectrum uniform(std::size_t n);
  /// Parses "0.25,0.25,0.5".
  static SchmidtSpectrum parse(std::string_view text);

  std::size_t size() const { return coeffs_.size(); }
  double operator[](std::size_t j) const { return coeffs_.at(j); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// sum_j lambda_j^2, the purity of either reduced state.
  double purity() const;

 private:
  std::vector<double> coeffs_;
};

class PureState {
 public:
  /// Throws std::invalid_argument unless |amplitudes| = 1 within 1e-12 and
  /// the signature matches.
  PureState(ComplexVector amplitudes, DimSignature sig);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  const DimSignature& sig() const { return sig_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  ComplexVector amplitudes_;
  DimSignature sig_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalues
  /// >= -1e-10.
  DensityMatrix(ComplexMatrix matrix, DimSignature sig);

  static DensityMatrix from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const { return matrix_; }
  const DimSignature& sig() const { return sig_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

  double purity() const;

 private:
  ComplexMatrix matrix_;
  DimSignature sig_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

struct IsotropicParams {
  IsotropicParams(std::size_t n, double p);

  std::size_t n;
  double p;
};

/// sum_j sqrt(lambda_j) |jj>.
PureState schmidt_pure(const SchmidtSpectrum& s);

/// Maximally entangled (1/sqrt N) sum_j |jj>.
PureState maximally_entangled(std::size_t n);

/// p I/4 + (1-p)|psi><psi| with |psi> = sqrt(lam0)|00> + sqrt(1-lam0)|11>.
DensityMatrix noisy_qubit_pair(double p, double lam0);

/// p I/N^2 + (1-p)|Phi_N><Phi_N|.
DensityMatrix isotropic_state(const IsotropicParams& par);

/// Overlap with the maximally entangled state: 1 - p + p/N^2.
double fidelity_isotropic(const IsotropicParams& par);

/// Schmidt coefficients of a two-subsystem pure state.
SchmidtSpectrum schmidt_decompose(const PureState& psi);

}  // namespace concswap
