#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "concswap/concurrence.hpp"
#include "concswap/measurement.hpp"
#include "concswap/random.hpp"
#include "oracles.hpp"

using namespace concswap;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double gram_defect(const MeasurementBasis& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  return max_abs(gram(b.vectors()) - ComplexMatrix::Identity(n, n));
}

double resolution_defect(const MeasurementBasis& b) {
  const auto d = static_cast<Eigen::Index>(b.sig().total());
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& v : b.vectors()) sum += v * v.adjoint();
  return max_abs(sum - ComplexMatrix::Identity(d, d));
}

ComplexVector random_pure(Rng& rng, std::size_t dim) {
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (auto& x : v) x = rng.complex_normal();
  return v / v.norm();
}

const double h = std::numbers::sqrt2 / 2.0;

}  // namespace

TEST_CASE("MeasurementBasis validation") {
  const auto bell = bell_basis();
  std::vector<ComplexVector> v = bell.vectors();
  CHECK_THROWS_AS(MeasurementBasis(v, {"a", "b", "c"}, DimSignature{2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(MeasurementBasis({v[0], v[1], v[2]}, {"a", "b", "c"}, DimSignature{2, 2}),
                  std::invalid_argument);
  std::vector<ComplexVector> skewed = v;
  skewed[1] = (v[0] + v[1]) * h;
  CHECK_THROWS_AS(MeasurementBasis(skewed, bell.labels(), DimSignature{2, 2}),
                  std::invalid_argument);
  CHECK_NOTHROW(MeasurementBasis(v, bell.labels(), DimSignature{2, 2}));
}

TEST_CASE("generalized_bell_basis") {
  const auto g = generalized_bell_basis(h, h, h, h);
  const auto b = bell_basis();
  for (std::size_t k = 0; k < 4; ++k) CHECK(max_abs(g.vectors()[k] - b.vectors()[k]) == 0.0);

  // Unentangled choice: the computational basis up to signs.
  const auto p = generalized_bell_basis(1.0, 0.0, 1.0, 0.0);
  const std::array<Eigen::Index, 4> support{0, 3, 1, 2};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(std::abs(p.vectors()[k](support[k])) - 1.0) < 1e-15);
    CHECK(std::abs(p.vectors()[k].norm() - 1.0) < 1e-15);
  }
  CHECK(p.labels() == std::vector<std::string>{"Psi~+", "Psi~-", "Phi~+", "Phi~-"});

  CHECK_THROWS_AS(generalized_bell_basis(1.0, 0.1, h, h), std::invalid_argument);

  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const double t0 = rng.uniform(0, 1.5707963), t1 = rng.uniform(0, 1.5707963);
    const Complex ph = std::polar(1.0, rng.uniform(0, 6.28));
    const auto r = generalized_bell_basis(std::cos(t0), std::sin(t0) * ph, std::cos(t1) * ph,
                                          std::sin(t1));
    CHECK(gram_defect(r) < 1e-12);
    const auto par = bell_params(r);
    REQUIRE(par.has_value());
    CHECK(std::abs(par->alpha0 - std::cos(t0)) < 1e-15);
    CHECK(std::abs(par->beta0 - std::sin(t0) * ph) < 1e-15);
  }
}

TEST_CASE("bell_params only recognizes generalized Bell bases") {
  CHECK(bell_params(bell_basis()).has_value());
  CHECK_FALSE(bell_params(ghz_basis()).has_value());
  CHECK_FALSE(bell_params(qudit_chi_basis(2)).has_value());
  CHECK_FALSE(bell_params(qudit_chi_basis(3)).has_value());
}

TEST_CASE("bell_basis") {
  const auto b = bell_basis();
  CHECK(b.labels() == std::vector<std::string>{"Phi+", "Phi-", "Psi+", "Psi-"});
  for (const auto& v : b.vectors()) CHECK(std::abs(v.norm() - 1.0) < 1e-15);
  CHECK(std::abs(b.vectors()[0].dot(b.vectors()[2])) == 0.0);
  CHECK(gram_defect(b) < 1e-15);
}

TEST_CASE("ghz_basis") {
  const auto g = ghz_basis();
  CHECK(g.size() == 8);
  CHECK(g.sig() == DimSignature{2, 2, 2});
  CHECK(g.labels()[0] == "G0+");
  CHECK(g.labels()[7] == "G3-");
  CHECK(std::abs(g.vectors()[0].dot(g.vectors()[1])) == 0.0);
  CHECK(gram_defect(g) < 1e-12);
  CHECK(resolution_defect(g) < 1e-12);
  // G3 pairs |100> with |011>.
  CHECK(std::abs(g.vectors()[6](4) - h) < 1e-15);
  CHECK(std::abs(g.vectors()[6](3) - h) < 1e-15);
}

TEST_CASE("qudit_chi_basis") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto c = qudit_chi_basis(n);
    CHECK(c.size() == n * n);
    CHECK(gram_defect(c) < 1e-12);
    CHECK(resolution_defect(c) < 1e-12);
    CHECK(max_abs(c.vectors()[0] - maximally_entangled(n).amplitudes()) < 1e-15);
  }
  // N = 2: the Bell basis up to phases and order.
  const auto c2 = qudit_chi_basis(2);
  const auto bell = bell_basis();
  for (const auto& v : c2.vectors()) {
    double best = 0.0;
    for (const auto& b : bell.vectors()) best = std::max(best, std::abs(b.dot(v)));
    CHECK(std::abs(best - 1.0) < 1e-15);
  }
  // chi_12 at N = 3: amplitude e^{2 pi i j/3}/sqrt3 on |j, j+2>.
  const auto c3 = qudit_chi_basis(3);
  CHECK(c3.labels()[5] == "chi_1_2");
  CHECK(std::abs(c3.vectors()[5](1 * 3 + 0) -
                 std::polar(1.0 / std::sqrt(3.0), 2.0 * std::acos(-1.0) / 3.0)) < 1e-15);
  CHECK_THROWS_AS(qudit_chi_basis(1), std::invalid_argument);
}

TEST_CASE("project: two Bell pairs give four maximally entangled outcomes") {
  const DensityMatrix joint =
      DensityMatrix::from_pure(tensor(maximally_entangled(2), maximally_entangled(2)));
  constexpr std::array<std::size_t, 2> bc{1, 2};
  const auto out = project(joint, bell_basis(), bc);
  REQUIRE(out.size() == 4);
  for (const auto& o : out) {
    CHECK(std::abs(o.probability - 0.25) < 1e-15);
    REQUIRE(o.post_state.has_value());
    CHECK(o.post_state->sig() == DimSignature{2, 2});
    CHECK(std::abs(wootters_concurrence(*o.post_state) - 1.0) < 1e-12);
  }
}

TEST_CASE("project: outcome probabilities of pure and depolarized pairs") {
  constexpr std::array<std::size_t, 2> bc{1, 2};
  const double l0 = 0.7, m0 = 0.6;
  const PureState joint = tensor(schmidt_pure(SchmidtSpectrum::qubit(l0)),
                                 schmidt_pure(SchmidtSpectrum::qubit(m0)));
  const double even = (l0 * m0 + (1 - l0) * (1 - m0)) / 2.0;
  const auto bell = project(joint, bell_basis(), bc);
  CHECK(bell[0].label == "Phi+");
  CHECK(std::abs(bell[0].probability - even) < 1e-15);
  CHECK(std::abs(bell[2].probability - (0.5 - even)) < 1e-15);
  const auto gen = project(joint, generalized_bell_basis(h, h, h, h), bc);
  CHECK(gen[0].label == "Psi~+");
  CHECK(std::abs(gen[0].probability - even) < 1e-15);

  const double p = 0.3, lam0 = 0.7;
  const DensityMatrix pair = noisy_qubit_pair(p, lam0);
  const auto noisy = project(tensor(pair, pair), bell_basis(), bc);
  const double p_phi = p * (2 - p) / 4 + 0.5 * (1 - p) * (1 - p) * (lam0 * lam0 + 0.09);
  CHECK(std::abs(noisy[0].probability - p_phi) < 1e-12);
  CHECK(std::abs(noisy[1].probability - p_phi) < 1e-12);
}

TEST_CASE("project agrees with explicit projectors and partial traces") {
  Rng rng(32);
  struct Case {
    DimSignature sig;
    MeasurementBasis basis;
    std::vector<std::size_t> measured;
  };
  const std::vector<Case> cases{{DimSignature{2, 2, 2, 2}, bell_basis(), {1, 2}},
                                {DimSignature{2, 2, 2, 2}, bell_basis(), {3, 0}},
                                {DimSignature{2, 3, 3, 2}, qudit_chi_basis(3), {2, 1}},
                                {DimSignature::uniform(6, 2), ghz_basis(), {1, 3, 5}}};
  for (const auto& c : cases) {
    const ComplexMatrix rho = random_density(rng, c.sig.total(), 3);
    const auto got = project(DensityMatrix(rho, c.sig), c.basis, c.measured);
    const auto want = oracle::measure(rho, c.sig.dims(), c.measured, c.basis.vectors());
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(std::abs(got[k].probability - want[k].probability) < 1e-14);
      REQUIRE(got[k].post_state.has_value());
      CHECK(max_abs(got[k].post_state->matrix() - want[k].reduced) < 1e-12);
    }
  }
}

TEST_CASE("pure and density projections agree") {
  Rng rng(33);
  const DimSignature sig{3, 3, 3, 3};
  constexpr std::array<std::size_t, 2> bc{1, 2};
  for (int t = 0; t < 5; ++t) {
    const PureState psi(random_pure(rng, sig.total()), sig);
    const auto a = project(psi, qudit_chi_basis(3), bc);
    const auto b = project(DensityMatrix::from_pure(psi), qudit_chi_basis(3), bc);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::abs(a[k].probability - b[k].probability) < 1e-14);
      const ComplexVector& v = a[k].post_state->amplitudes();
      CHECK(max_abs(v * v.adjoint() - b[k].post_state->matrix()) < 1e-12);
    }
  }
}

TEST_CASE("project: completeness and purity") {
  Rng rng(34);
  constexpr std::array<std::size_t, 3> bdf{1, 3, 5};
  const DimSignature sig = DimSignature::uniform(6, 2);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho(random_density(rng, 64, 1 + t), sig);
    double total = 0.0;
    for (const auto& o : project(rho, ghz_basis(), bdf)) {
      total += o.probability;
      if (o.post_state) CHECK(std::abs(o.post_state->matrix().trace() - 1.0) < 1e-12);
    }
    CHECK(std::abs(total - 1.0) < 1e-10);

    const DensityMatrix pure = DensityMatrix::from_pure(PureState(random_pure(rng, 64), sig));
    for (const auto& o : project(pure, ghz_basis(), bdf))
      if (o.post_state) CHECK(std::abs(o.post_state->purity() - 1.0) < 1e-10);
  }
}

TEST_CASE("project: zero-probability outcomes carry no state") {
  ComplexVector zero = ComplexVector::Zero(16);
  zero(0) = 1.0;  // |0000>
  constexpr std::array<std::size_t, 2> bc{1, 2};
  const auto pure = project(PureState(zero, DimSignature{2, 2, 2, 2}), bell_basis(), bc);
  const auto mixed = project(DensityMatrix::from_pure(PureState(zero, DimSignature{2, 2, 2, 2})),
                             bell_basis(), bc);
  for (std::size_t k = 0; k < 4; ++k) {
    const bool even = k < 2;
    CHECK(pure[k].probability == doctest::Approx(even ? 0.5 : 0.0));
    CHECK(pure[k].post_state.has_value() == even);
    CHECK(mixed[k].post_state.has_value() == even);
  }
}

TEST_CASE("project: argument errors") {
  const DensityMatrix rho(ComplexMatrix::Identity(8, 8) / 8.0, DimSignature{2, 2, 2});
  constexpr std::array<std::size_t, 2> dup{1, 1};
  constexpr std::array<std::size_t, 2> far{1, 3};
  constexpr std::array<std::size_t, 3> all{0, 1, 2};
  CHECK_THROWS_AS(project(rho, bell_basis(), dup), std::invalid_argument);
  CHECK_THROWS_AS(project(rho, bell_basis(), far), std::invalid_argument);
  CHECK_THROWS_AS(project(rho, ghz_basis(), all), std::invalid_argument);
  constexpr std::array<std::size_t, 2> ok{0, 1};
  CHECK_THROWS_AS(project(rho, qudit_chi_basis(3), ok), std::invalid_argument);
}
