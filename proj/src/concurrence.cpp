#include "concswap/concurrence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace concswap {

namespace {

constexpr double kOffXTol = 1e-12;
constexpr double kDomainTol = 1e-15;

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.sig() != DimSignature{2, 2})
    throw std::invalid_argument("expected a two-qubit density matrix");
}

}  // namespace

double concurrence_pure_qubit(const SchmidtSpectrum& s) {
  if (s.size() != 2) throw std::invalid_argument("expected a two-term Schmidt spectrum");
  return 2.0 * std::sqrt(s[0] * s[1]);
}

ComplexMatrix spin_flip(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("spin_flip needs a 4x4 operator");
  // sigma_y x sigma_y = antidiag(-1, 1, 1, -1).
  constexpr std::array<double, 4> sign{-1.0, 1.0, 1.0, -1.0};
  ComplexMatrix out(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      out(i, j) = sign[i] * sign[j] * std::conj(m(3 - i, 3 - j));
  return out;
}

double wootters_concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const ComplexMatrix a = root * spin_flip(root);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const RealVector r = svd.singularValues();  // descending
  return std::max(0.0, r(0) - r(1) - r(2) - r(3));
}

double x_state_concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(m(i, j)) > kOffXTol)
        throw std::invalid_argument("density matrix is not of X form");
  const double d0 = m(0, 0).real(), d1 = m(1, 1).real(), d2 = m(2, 2).real(),
               d3 = m(3, 3).real();
  const double outer = std::abs(m(0, 3)) - std::sqrt(std::max(0.0, d1 * d2));
  const double inner = std::abs(m(1, 2)) - std::sqrt(std::max(0.0, d0 * d3));
  return 2.0 * std::max({0.0, outer, inner});
}

std::optional<std::pair<double, double>> input_entanglement_window(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing parameter must lie in [0, 1]");
  if (p >= 2.0 / 3.0) return std::nullopt;
  const double q = 1.0 - p;
  const double half_width = 0.5 * std::sqrt(1.0 - p * p / (4.0 * q * q));
  return std::pair{0.5 - half_width, 0.5 + half_width};
}

double i_concurrence_pure(const SchmidtSpectrum& s) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - s.purity())));
}

double i_concurrence_pure(const PureState& psi) {
  if (psi.sig().size() != 2)
    throw std::invalid_argument("I-concurrence needs a bipartite signature");
  const auto da = static_cast<Eigen::Index>(psi.sig()[0]);
  const auto db = static_cast<Eigen::Index>(psi.sig()[1]);
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      coeff(psi.amplitudes().data(), da, db);
  // 1 - Tr rho_a^2 = 2 e2(rho_a), summed from the 2x2 minors of the
  // coefficient matrix (Cauchy-Binet). Product states give exact zeros here
  // instead of a rounding residue under the square root.
  double minors = 0.0;
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = i + 1; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = k + 1; l < db; ++l)
          minors += std::norm(coeff(i, k) * coeff(j, l) - coeff(i, l) * coeff(j, k));
  const double norm2 = coeff.squaredNorm();
  return 2.0 * std::sqrt(minors) / norm2;
}

double concurrence_2xd_pure(const SchmidtSpectrum& s) { return concurrence_pure_qubit(s); }

double concurrence_2xd_pure(const PureState& psi, std::size_t qubit) {
  if (qubit >= psi.sig().size() || psi.sig()[qubit] != 2)
    throw std::invalid_argument("selected subsystem is not a qubit");
  const DimSignature& sig = psi.sig();
  const auto& v = psi.amplitudes();
  std::vector<std::size_t> order{qubit};
  for (std::size_t k = 0; k < sig.size(); ++k)
    if (k != qubit) order.push_back(k);
  const ComplexVector w = permute_subsystems(v, sig, order);
  const Eigen::Index rest = w.size() / 2;
  const auto up = w.head(rest);
  const auto down = w.tail(rest);
  // det of the reduced qubit state equals lambda0 lambda1.
  const double det = up.squaredNorm() * down.squaredNorm() - std::norm(up.dot(down));
  return 2.0 * std::sqrt(std::max(0.0, det));
}

QSolution q_branch(std::size_t n, std::size_t r, double f) {
  if (n < 2 || r < 1 || r >= n) throw std::invalid_argument("branch index must satisfy 1 <= r <= N-1");
  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  if (!(f <= 1.0 + kDomainTol && f >= rd / nd - kDomainTol))
    throw std::invalid_argument("fidelity outside the branch domain r/N <= F <= 1");
  f = std::clamp(f, rd / nd, 1.0);

  QSolution sol;
  sol.r = r;
  sol.alpha = (std::sqrt(rd * f) + std::sqrt((nd - rd) * (1.0 - f))) / std::sqrt(rd * nd);
  sol.beta = (std::sqrt(f * nd) - rd * sol.alpha) / (nd - rd);
  if (sol.beta < 0.0 && sol.beta > -1e-12) sol.beta = 0.0;
  const double a2 = sol.alpha * sol.alpha;
  const double b2 = sol.beta * sol.beta;
  const double k2 = 1.0 - rd * a2 * a2 - (nd - rd) * b2 * b2;
  sol.q_value = std::sqrt(2.0 * std::max(0.0, k2));
  return sol;
}

double q_minimum(std::size_t n, double f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < n; ++r)
    if (f >= static_cast<double>(r) / static_cast<double>(n) - kDomainTol)
      best = std::min(best, q_branch(n, r, f).q_value);
  if (!std::isfinite(best)) throw std::invalid_argument("fidelity below every branch domain");
  return best;
}

double isotropic_i_concurrence_from_fidelity(std::size_t n, double f) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  const double inv = 1.0 / static_cast<double>(n);
  if (f <= inv) return 0.0;
  const double top = std::sqrt(2.0 * (1.0 - inv));
  return top * ((f - inv) / (1.0 - inv));
}

double isotropic_i_concurrence(const IsotropicParams& par) {
  return isotropic_i_concurrence_from_fidelity(par.n, fidelity_isotropic(par));
}

}  // namespace concswap
