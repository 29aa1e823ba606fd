// Projective measurements in entangled bases.
//
// Convention: `measured` lists the measured subsystems of the joint state in
// the order the basis vectors expect them. Internally the joint state is
// permuted so the measured subsystems come first (in that order) followed
// by the retained ones in their original order; post-measurement states are
// expressed over the retained subsystems in original order.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "concswap/linalg.hpp"
#include "concswap/states.hpp"

namespace concswap {

inline constexpr double kZeroProbability = 1e-14;

class MeasurementBasis {
 public:
  /// Throws unless the vectors are orthonormal within 1e-12 and complete.
  MeasurementBasis(std::vector<ComplexVector> vectors, std::vector<std::string> labels,
                   DimSignature sig);

  const std::vector<ComplexVector>& vectors() const { return vectors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const DimSignature& sig() const { return sig_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::vector<ComplexVector> vectors_;
  std::vector<std::string> labels_;
  DimSignature sig_;
};

/// Coefficients (alpha0, beta0, alpha1, beta1) of a two-qubit basis in the
/// generalized Bell form.
struct BellParams {
  Complex alpha0, beta0, alpha1, beta1;
};

/// Vectors, in order:
///   Psi~+ = a0|00> + b0|11>,   Psi~- = b0*|00> - a0*|11>,
///   Phi~+ = a1|01> + b1|10>,   Phi~- = b1*|01> - a1*|10>.
MeasurementBasis generalized_bell_basis(Complex a0, Complex b0, Complex a1, Complex b1);

/// Recovers the generalized Bell coefficients from a basis of that form;
/// empty when the basis is not one.
std::optional<BellParams> bell_params(const MeasurementBasis& basis);

/// Phi+, Phi-, Psi+, Psi- with Phi = (|00> +- |11>)/sqrt2 and
/// Psi = (|01> +- |10>)/sqrt2.
MeasurementBasis bell_basis();

/// G_k^{+-} = (|x> +- |~x>)/sqrt2 for x = 000, 001, 010, 100 (k = 0..3).
MeasurementBasis ghz_basis();

/// chi_mn = (1/sqrt N) sum_j e^{2 pi i j m / N} |j>|j+n mod N>, ordered by
/// m then n.
MeasurementBasis qudit_chi_basis(std::size_t n);

struct SwapOutcome {
  std::string label;
  double probability = 0.0;
  /// Absent when probability <= kZeroProbability.
  std::optional<DensityMatrix> post_state;
};

struct PureOutcome {
  std::string label;
  double probability = 0.0;
  std::optional<PureState> post_state;
};

std::vector<SwapOutcome> project(const DensityMatrix& joint, const MeasurementBasis& basis,
                                 std::span<const std::size_t> measured);

/// Pure-state specialization; avoids forming the joint density matrix.
std::vector<PureOutcome> project(const PureState& joint, const MeasurementBasis& basis,
                                 std::span<const std::size_t> measured);

}  // namespace concswap
