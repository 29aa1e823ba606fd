#include "concswap/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace concswap {

double Rng::normal() {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SchmidtSpectrum random_spectrum(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = 1.0 - rng.uniform();
    total += x;
  }
  for (auto& x : w) x /= total;
  return SchmidtSpectrum(std::move(w));
}

ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  ComplexMatrix g(nn, nn);
  for (Eigen::Index j = 0; j < nn; ++j)
    for (Eigen::Index i = 0; i < nn; ++i) g(i, j) = rng.complex_normal();
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < nn; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  ComplexMatrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) * 0.5;
}

}  // namespace concswap
