#include "concswap/measurement.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace concswap {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kNormalizationTol = 1e-12;

ComplexVector basis_vector(std::size_t dim, std::initializer_list<std::pair<std::size_t, Complex>> terms) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& [index, amp] : terms) v(static_cast<Eigen::Index>(index)) += amp;
  return v;
}

struct Split {
  std::vector<std::size_t> order;
  DimSignature retained;
  std::size_t measured_dim;
  std::size_t retained_dim;
};

Split split_subsystems(const DimSignature& sig, const MeasurementBasis& basis,
                       std::span<const std::size_t> measured) {
  const auto rest = detail::complement(measured, sig.size());
  if (rest.empty()) throw std::invalid_argument("project: nothing would be retained");
  if (sig.select(measured) != basis.sig())
    throw std::invalid_argument("project: measured subsystems do not match the basis");
  Split s;
  s.order.assign(measured.begin(), measured.end());
  s.order.insert(s.order.end(), rest.begin(), rest.end());
  s.retained = sig.select(rest);
  s.measured_dim = basis.sig().total();
  s.retained_dim = s.retained.total();
  return s;
}

}  // namespace

MeasurementBasis::MeasurementBasis(std::vector<ComplexVector> vectors,
                                   std::vector<std::string> labels, DimSignature sig)
    : vectors_(std::move(vectors)), labels_(std::move(labels)), sig_(std::move(sig)) {
  if (vectors_.size() != labels_.size())
    throw std::invalid_argument("MeasurementBasis: one label per vector required");
  if (vectors_.size() != sig_.total())
    throw std::invalid_argument("MeasurementBasis: basis is not complete");
  for (const auto& v : vectors_)
    if (static_cast<std::size_t>(v.size()) != sig_.total())
      throw std::invalid_argument("MeasurementBasis: vector has the wrong dimension");
  const ComplexMatrix g = gram(vectors_);
  const auto n = static_cast<Eigen::Index>(vectors_.size());
  if ((g - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kOrthoTol)
    throw std::invalid_argument("MeasurementBasis: vectors are not orthonormal");
}

MeasurementBasis generalized_bell_basis(Complex a0, Complex b0, Complex a1, Complex b1) {
  if (std::abs(std::norm(a0) + std::norm(b0) - 1.0) > kNormalizationTol ||
      std::abs(std::norm(a1) + std::norm(b1) - 1.0) > kNormalizationTol)
    throw std::invalid_argument("generalized Bell coefficients must satisfy |a|^2 + |b|^2 = 1");
  std::vector<ComplexVector> v{
      basis_vector(4, {{0, a0}, {3, b0}}),
      basis_vector(4, {{0, std::conj(b0)}, {3, -std::conj(a0)}}),
      basis_vector(4, {{1, a1}, {2, b1}}),
      basis_vector(4, {{1, std::conj(b1)}, {2, -std::conj(a1)}}),
  };
  return MeasurementBasis(std::move(v), {"Psi~+", "Psi~-", "Phi~+", "Phi~-"},
                          DimSignature{2, 2});
}

std::optional<BellParams> bell_params(const MeasurementBasis& basis) {
  if (basis.sig() != DimSignature{2, 2}) return std::nullopt;
  const auto& v = basis.vectors();
  const BellParams par{v[0](0), v[0](3), v[2](1), v[2](2)};
  try {
    const auto reference = generalized_bell_basis(par.alpha0, par.beta0, par.alpha1, par.beta1);
    for (std::size_t k = 0; k < 4; ++k)
      if ((reference.vectors()[k] - v[k]).cwiseAbs().maxCoeff() > kOrthoTol) return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return par;
}

MeasurementBasis bell_basis() {
  const double h = std::numbers::sqrt2 / 2.0;
  std::vector<ComplexVector> v{
      basis_vector(4, {{0, h}, {3, h}}),
      basis_vector(4, {{0, h}, {3, -h}}),
      basis_vector(4, {{1, h}, {2, h}}),
      basis_vector(4, {{1, h}, {2, -h}}),
  };
  return MeasurementBasis(std::move(v), {"Phi+", "Phi-", "Psi+", "Psi-"}, DimSignature{2, 2});
}

MeasurementBasis ghz_basis() {
  const double h = std::numbers::sqrt2 / 2.0;
  constexpr std::array<std::size_t, 4> heads{0b000, 0b001, 0b010, 0b100};
  std::vector<ComplexVector> v;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < heads.size(); ++k) {
    const std::size_t x = heads[k];
    const std::size_t flipped = x ^ 0b111;
    v.push_back(basis_vector(8, {{x, h}, {flipped, h}}));
    v.push_back(basis_vector(8, {{x, h}, {flipped, -h}}));
    labels.push_back("G" + std::to_string(k) + "+");
    labels.push_back("G" + std::to_string(k) + "-");
  }
  return MeasurementBasis(std::move(v), std::move(labels), DimSignature{2, 2, 2});
}

MeasurementBasis qudit_chi_basis(std::size_t n) {
  if (n < 2) throw std::invalid_argument("qudit dimension must be >= 2");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const double nd = static_cast<double>(n);
  std::vector<ComplexVector> v;
  std::vector<std::string> labels;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t shift = 0; shift < n; ++shift) {
      ComplexVector chi = ComplexVector::Zero(static_cast<Eigen::Index>(n * n));
      for (std::size_t j = 0; j < n; ++j) {
        // Reduce jm mod N before forming the angle to keep phases exact.
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * m) % n) / nd;
        chi(static_cast<Eigen::Index>(j * n + (j + shift) % n)) = std::polar(norm, angle);
      }
      v.push_back(std::move(chi));
      labels.push_back("chi_" + std::to_string(m) + "_" + std::to_string(shift));
    }
  return MeasurementBasis(std::move(v), std::move(labels), DimSignature::uniform(2, n));
}

std::vector<SwapOutcome> project(const DensityMatrix& joint, const MeasurementBasis& basis,
                                 std::span<const std::size_t> measured) {
  const Split s = split_subsystems(joint.sig(), basis, measured);
  const ComplexMatrix rho = permute_subsystems_op(joint.matrix(), joint.sig(), s.order);
  const auto dm = static_cast<Eigen::Index>(s.measured_dim);
  const auto dr = static_cast<Eigen::Index>(s.retained_dim);

  std::vector<SwapOutcome> outcomes;
  outcomes.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ComplexVector& chi = basis.vectors()[k];
    ComplexMatrix sigma = ComplexMatrix::Zero(dr, dr);
    for (Eigen::Index y = 0; y < dm; ++y) {
      if (chi(y) == Complex(0.0)) continue;
      for (Eigen::Index x = 0; x < dm; ++x) {
        if (chi(x) == Complex(0.0)) continue;
        sigma += (std::conj(chi(x)) * chi(y)) * rho.block(x * dr, y * dr, dr, dr);
      }
    }
    SwapOutcome out;
    out.label = basis.labels()[k];
    out.probability = std::max(0.0, sigma.trace().real());
    if (out.probability > kZeroProbability) {
      ComplexMatrix post = sigma / out.probability;
      post = (post + post.adjoint()) * 0.5;
      out.post_state.emplace(std::move(post), s.retained);
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<PureOutcome> project(const PureState& joint, const MeasurementBasis& basis,
                                 std::span<const std::size_t> measured) {
  const Split s = split_subsystems(joint.sig(), basis, measured);
  const ComplexVector psi = permute_subsystems(joint.amplitudes(), joint.sig(), s.order);
  const auto dm = static_cast<Eigen::Index>(s.measured_dim);
  const auto dr = static_cast<Eigen::Index>(s.retained_dim);
  // Column x holds the retained amplitudes paired with measured index x.
  const Eigen::Map<const ComplexMatrix> blocks(psi.data(), dr, dm);

  std::vector<PureOutcome> outcomes;
  outcomes.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    ComplexVector phi = blocks * basis.vectors()[k].conjugate();
    PureOutcome out;
    out.label = basis.labels()[k];
    out.probability = phi.squaredNorm();
    if (out.probability > kZeroProbability) {
      phi /= std::sqrt(out.probability);
      out.post_state.emplace(std::move(phi), s.retained);
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

}  // namespace concswap
