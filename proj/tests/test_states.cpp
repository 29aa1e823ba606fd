#include <doctest.h>

#include <cmath>
#include <limits>

#include "concswap/random.hpp"
#include "concswap/states.hpp"

using namespace concswap;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexVector basis_state(Eigen::Index dim, Eigen::Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("SchmidtSpectrum validation and ordering") {
  const SchmidtSpectrum s({0.3, 0.7});
  CHECK(s[0] == 0.7);
  CHECK(s[1] == 0.3);
  CHECK(SchmidtSpectrum::qubit(0.25).coeffs() == std::vector<double>{0.75, 0.25});
  CHECK(SchmidtSpectrum::uniform(4).purity() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(SchmidtSpectrum({0.5, 0.3, 0.2}).purity() == doctest::Approx(0.38).epsilon(1e-15));

  const SchmidtSpectrum nudged({0.5 + 1e-11, 0.5});
  CHECK(std::abs(nudged[0] + nudged[1] - 1.0) < 1e-15);

  CHECK_THROWS_AS(SchmidtSpectrum({0.5, 0.5 + 1e-8}), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum({std::numeric_limits<double>::quiet_NaN(), 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum::qubit(1.5), std::invalid_argument);
}

TEST_CASE("SchmidtSpectrum::parse") {
  const SchmidtSpectrum s = SchmidtSpectrum::parse("0.25, 0.5 ,0.25");
  CHECK(s.coeffs() == std::vector<double>{0.5, 0.25, 0.25});
  CHECK_THROWS_AS(SchmidtSpectrum::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum::parse("0.5,abc"), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum::parse("0.5,"), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum::parse("0.5,0.6"), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtSpectrum::parse("1.5,-0.5"), std::invalid_argument);
}

TEST_CASE("PureState and DensityMatrix validation") {
  CHECK_THROWS_AS(PureState(ComplexVector::Ones(4), DimSignature{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(PureState(basis_state(4, 0), DimSignature{2, 3}), std::invalid_argument);

  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  CHECK_NOTHROW(DensityMatrix(m, DimSignature{2, 2}));
  CHECK_THROWS_AS(DensityMatrix(m * 2.0, DimSignature{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(DensityMatrix(m, DimSignature{4, 2}), std::invalid_argument);
  ComplexMatrix skew = m;
  skew(0, 1) = Complex(0.0, 0.1);
  CHECK_THROWS_AS(DensityMatrix(skew, DimSignature{2, 2}), std::invalid_argument);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix(negative, DimSignature{2}), std::invalid_argument);

  const DensityMatrix pure = DensityMatrix::from_pure(PureState(basis_state(4, 2), DimSignature{2, 2}));
  CHECK(pure(2, 2) == Complex(1.0));
  CHECK(pure.purity() == doctest::Approx(1.0));
  CHECK(DensityMatrix(m, DimSignature{2, 2}).purity() == doctest::Approx(0.25));
}

TEST_CASE("tensor of states concatenates signatures") {
  const PureState a(basis_state(2, 1), DimSignature{2});
  const PureState b(basis_state(3, 0), DimSignature{3});
  const PureState ab = tensor(a, b);
  CHECK(ab.sig() == DimSignature{2, 3});
  CHECK(ab.amplitudes()(3) == Complex(1.0));
  const DensityMatrix r = tensor(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b));
  CHECK(r.sig() == DimSignature{2, 3});
  CHECK(r(3, 3) == Complex(1.0));
}

TEST_CASE("schmidt_pure") {
  CHECK(schmidt_pure(SchmidtSpectrum({1.0, 0.0})).amplitudes() == basis_state(4, 0));
  const ComplexVector bell = schmidt_pure(SchmidtSpectrum::uniform(2)).amplitudes();
  CHECK(std::abs(bell(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(bell(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  const ComplexVector v = schmidt_pure(SchmidtSpectrum({0.3, 0.7})).amplitudes();
  CHECK(v(0) == Complex(std::sqrt(0.7)));
  CHECK(v(3) == Complex(std::sqrt(0.3)));
  CHECK(v(1) == Complex(0.0));
  CHECK(maximally_entangled(3).sig() == DimSignature{3, 3});
}

TEST_CASE("noisy_qubit_pair") {
  for (double lam0 : {0.5, 0.7, 0.9, 1.0}) {
    const ComplexMatrix pure =
        DensityMatrix::from_pure(schmidt_pure(SchmidtSpectrum::qubit(lam0))).matrix();
    CHECK(max_abs(noisy_qubit_pair(0.0, lam0).matrix() - pure) <= 1e-15);
  }
  CHECK(max_abs(noisy_qubit_pair(1.0, 0.3).matrix() - ComplexMatrix::Identity(4, 4) / 4.0) == 0.0);

  const DensityMatrix x = noisy_qubit_pair(0.4, 0.5);
  CHECK(std::abs(x(0, 0) - 0.4) < 1e-15);
  CHECK(std::abs(x(1, 1) - 0.1) < 1e-15);
  CHECK(std::abs(x(2, 2) - 0.1) < 1e-15);
  CHECK(std::abs(x(3, 3) - 0.4) < 1e-15);
  CHECK(std::abs(x(0, 3) - 0.3) < 1e-15);
  CHECK(std::abs(x(3, 0) - 0.3) < 1e-15);
  CHECK(x(1, 2) == Complex(0.0));

  CHECK_THROWS_AS(noisy_qubit_pair(-0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(noisy_qubit_pair(0.5, 1.1), std::invalid_argument);
}

TEST_CASE("isotropic_state") {
  const ComplexVector phi2 = maximally_entangled(2).amplitudes();
  CHECK(max_abs(isotropic_state(IsotropicParams(2, 0.0)).matrix() - phi2 * phi2.adjoint()) <
        1e-15);
  for (std::size_t n : {2, 3, 5})
    CHECK(max_abs(isotropic_state(IsotropicParams(n, 1.0)).matrix() -
                  ComplexMatrix::Identity(static_cast<Eigen::Index>(n * n),
                                          static_cast<Eigen::Index>(n * n)) /
                      static_cast<double>(n * n)) < 1e-16);

  const DensityMatrix r = isotropic_state(IsotropicParams(3, 0.3));
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index k = 0; k < 3; ++k) {
      const double expected = (j == k) ? 0.3 / 9 + 0.7 / 3 : 0.7 / 3;
      CHECK(std::abs(r(j * 3 + j, k * 3 + k) - expected) < 1e-15);
    }
  CHECK(std::abs(r(1, 1) - 0.3 / 9) < 1e-15);
  CHECK(r(1, 2) == Complex(0.0));

  CHECK_THROWS_AS(IsotropicParams(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(IsotropicParams(3, 1.5), std::invalid_argument);
}

TEST_CASE("isotropic_state is invariant under U x U*") {
  Rng rng(21);
  for (std::size_t n = 2; n <= 4; ++n) {
    const DensityMatrix rho = isotropic_state(IsotropicParams(n, rng.uniform()));
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix u = random_unitary(rng, n);
      const auto id = ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
      CHECK(max_abs(u * u.adjoint() - id) < 1e-13);
      const ComplexMatrix w = tensor(u, u.conjugate().eval());
      CHECK(max_abs(w * rho.matrix() * w.adjoint() - rho.matrix()) < 1e-10);
    }
  }
}

TEST_CASE("fidelity_isotropic") {
  CHECK(fidelity_isotropic(IsotropicParams(4, 0.0)) == 1.0);
  CHECK(fidelity_isotropic(IsotropicParams(2, 1.0)) == 0.25);
  CHECK(fidelity_isotropic(IsotropicParams(2, 2.0 / 3.0)) == doctest::Approx(0.5).epsilon(1e-15));

  Rng rng(22);
  for (int t = 0; t < 30; ++t) {
    const IsotropicParams par(2 + static_cast<std::size_t>(t % 6), rng.uniform());
    const ComplexVector phi = maximally_entangled(par.n).amplitudes();
    CHECK(std::abs(phi.dot(isotropic_state(par).matrix() * phi).real() -
                   fidelity_isotropic(par)) < 1e-12);
  }
}

TEST_CASE("schmidt_decompose") {
  const SchmidtSpectrum product = schmidt_decompose(PureState(basis_state(4, 0), DimSignature{2, 2}));
  CHECK(product[0] == doctest::Approx(1.0));
  CHECK(std::abs(product[1]) < 1e-15);

  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const SchmidtSpectrum s = schmidt_decompose(PureState(singlet, DimSignature{2, 2}));
  CHECK(std::abs(s[0] - 0.5) < 1e-15);
  CHECK(std::abs(s[1] - 0.5) < 1e-15);

  // Round trip, also after scrambling both sides with local unitaries.
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    const SchmidtSpectrum in = random_spectrum(rng, n);
    const PureState psi = schmidt_pure(in);
    const ComplexMatrix local = tensor(random_unitary(rng, n), random_unitary(rng, n));
    const PureState scrambled(local * psi.amplitudes(), psi.sig());
    for (const PureState& state : {psi, scrambled}) {
      const SchmidtSpectrum out = schmidt_decompose(state);
      REQUIRE(out.size() == n);
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(out[j] - in[j]) < 1e-12);
    }
  }
  const PureState three =
      tensor(maximally_entangled(2), PureState(basis_state(2, 0), DimSignature{2}));
  CHECK_THROWS_AS(schmidt_decompose(three), std::invalid_argument);
}
