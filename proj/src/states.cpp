#include "concswap/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace concswap {

namespace {

constexpr double kSumRejectTol = 1e-9;
constexpr double kSumExactTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kMinEigen = -1e-10;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> coeffs) {
  if (coeffs.size() < 2)
    throw std::invalid_argument("Schmidt spectrum needs at least two coefficients");
  for (double c : coeffs)
    if (!std::isfinite(c) || c < 0.0)
      throw std::invalid_argument("Schmidt coefficients must be finite and nonnegative");

  const double sum = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumRejectTol)
    throw std::invalid_argument("Schmidt coefficients must sum to 1");
  if (std::abs(sum - 1.0) > kSumExactTol)
    for (auto& c : coeffs) c /= sum;

  std::stable_sort(coeffs.begin(), coeffs.end(), std::greater<>());
  coeffs_ = std::move(coeffs);
}

SchmidtSpectrum SchmidtSpectrum::qubit(double lam0) {
  if (!(lam0 >= 0.0 && lam0 <= 1.0))
    throw std::invalid_argument("lambda0 must lie in [0, 1]");
  return SchmidtSpectrum({lam0, 1.0 - lam0});
}

SchmidtSpectrum SchmidtSpectrum::uniform(std::size_t n) {
  return SchmidtSpectrum(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SchmidtSpectrum SchmidtSpectrum::parse(std::string_view text) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw std::invalid_argument("malformed spectrum entry '" + std::string(token) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return SchmidtSpectrum(std::move(values));
}

double SchmidtSpectrum::purity() const {
  double acc = 0.0;
  for (double c : coeffs_) acc += c * c;
  return acc;
}

PureState::PureState(ComplexVector amplitudes, DimSignature sig)
    : amplitudes_(std::move(amplitudes)), sig_(std::move(sig)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != sig_.total())
    throw std::invalid_argument("PureState: signature does not match dimension");
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("PureState: amplitudes are not normalized");
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, DimSignature sig)
    : matrix_(std::move(matrix)), sig_(std::move(sig)) {
  if (matrix_.rows() != matrix_.cols() ||
      static_cast<std::size_t>(matrix_.rows()) != sig_.total())
    throw std::invalid_argument("DensityMatrix: signature does not match dimension");
  if (hermiticity_defect(matrix_) > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  const RealVector ev = hermitian_eigvals(matrix_);
  if (ev(ev.size() - 1) < kMinEigen)
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const auto& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint(), psi.sig());
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return matrix_.squaredNorm();
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()), a.sig().concat(b.sig()));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(tensor_vec(a.amplitudes(), b.amplitudes()), a.sig().concat(b.sig()));
}

IsotropicParams::IsotropicParams(std::size_t n_, double p_) : n(n_), p(p_) {
  if (n < 2) throw std::invalid_argument("isotropic dimension must be >= 2");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mixing parameter must lie in [0, 1]");
}

PureState schmidt_pure(const SchmidtSpectrum& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  ComplexVector v = ComplexVector::Zero(n * n);
  for (Eigen::Index j = 0; j < n; ++j) v(j * n + j) = std::sqrt(s[j]);
  return PureState(std::move(v), DimSignature::uniform(2, s.size()));
}

PureState maximally_entangled(std::size_t n) {
  return schmidt_pure(SchmidtSpectrum::uniform(n));
}

DensityMatrix noisy_qubit_pair(double p, double lam0) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("mixing parameter must lie in [0, 1]");
  if (!(lam0 >= 0.0 && lam0 <= 1.0))
    throw std::invalid_argument("lambda0 must lie in [0, 1]");
  const double lam1 = 1.0 - lam0;
  const double coh = (1.0 - p) * std::sqrt(lam0 * lam1);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = p / 4.0 + (1.0 - p) * lam0;
  m(1, 1) = p / 4.0;
  m(2, 2) = p / 4.0;
  m(3, 3) = p / 4.0 + (1.0 - p) * lam1;
  m(0, 3) = coh;
  m(3, 0) = coh;
  return DensityMatrix(std::move(m), DimSignature{2, 2});
}

DensityMatrix isotropic_state(const IsotropicParams& par) {
  const auto n = static_cast<Eigen::Index>(par.n);
  const double nn = static_cast<double>(n * n);
  ComplexMatrix m = ComplexMatrix::Identity(n * n, n * n) * (par.p / nn);
  const double off = (1.0 - par.p) / static_cast<double>(n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) m(j * n + j, k * n + k) += off;
  return DensityMatrix(std::move(m), DimSignature::uniform(2, par.n));
}

double fidelity_isotropic(const IsotropicParams& par) {
  const double nn = static_cast<double>(par.n * par.n);
  return 1.0 - par.p + par.p / nn;
}

SchmidtSpectrum schmidt_decompose(const PureState& psi) {
  if (psi.sig().size() != 2)
    throw std::invalid_argument("schmidt_decompose needs exactly two subsystems");
  const auto da = static_cast<Eigen::Index>(psi.sig()[0]);
  const auto db = static_cast<Eigen::Index>(psi.sig()[1]);
  // Amplitude index a*db + b, i.e. a row-major da x db coefficient matrix.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      coeff(psi.amplitudes().data(), da, db);
  const ComplexMatrix dense = coeff;
  const Eigen::JacobiSVD<ComplexMatrix> svd(dense);
  std::vector<double> lambdas(static_cast<std::size_t>(da), 0.0);
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) lambdas[static_cast<std::size_t>(k)] = sv(k) * sv(k);
  return SchmidtSpectrum(std::move(lambdas));
}

}  // namespace concswap
