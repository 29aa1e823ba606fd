#include "concswap/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "concswap/random.hpp"

namespace concswap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the worst residual of one suite; NaN counts as a failure.
class Residual {
 public:
  void record(double r) { worst_ = std::isnan(r) ? kInf : std::max(worst_, r); }
  double worst() const { return worst_; }

 private:
  double worst_ = 0.0;
};

std::size_t scaled(std::size_t trials, std::size_t full) {
  return std::max<std::size_t>(1, full * trials / 100);
}

double grid_point(std::size_t k, std::size_t grid) {
  return static_cast<double>(k) / static_cast<double>(grid - 1);
}

// Root of a function that is positive on [lo, x*) and zero after it.
template <typename Fn>
double last_positive(Fn&& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ComplexVector random_pure(Rng& rng, std::size_t dim) {
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (auto& x : v) x = rng.complex_normal();
  return v / v.norm();
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// chi-basis swap of two pure qudit pairs with no dimension cap.
double qudit_oracle(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2) {
  const PureState joint = tensor(schmidt_pure(s1), schmidt_pure(s2));
  constexpr std::array<std::size_t, 2> bc{1, 2};
  double avg = 0.0;
  for (const auto& o : project(joint, qudit_chi_basis(s1.size()), bc))
    if (o.post_state) avg += o.probability * i_concurrence_pure(*o.post_state);
  return avg;
}

using SuiteFn = void (*)(const VerifyOptions&, Rng&, Residual&);

struct Suite {
  const char* name;
  double tolerance;
  SuiteFn run;
};

void partial_trace_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  const DimSignature sig{2, 3, 2};
  const std::array<std::vector<std::size_t>, 4> keeps{
      std::vector<std::size_t>{0}, {1}, {0, 2}, {2, 1}};
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const ComplexMatrix rho = random_density(rng, sig.total(), 1 + t % 12);
    for (const auto& keep : keeps)
      res.record(std::abs(partial_trace(rho, sig, keep).trace() - rho.trace()));
  }
}

void eigvals_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const ComplexMatrix rho = random_density(rng, 2 + t % 15, 1 + t % 5);
    res.record(std::abs(hermitian_eigvals(rho).sum() - rho.trace().real()));
  }
}

void psd_sqrt_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const std::size_t dim = 2 + t % 15;
    const ComplexMatrix rho = random_density(rng, dim, 1 + t % dim);
    const ComplexMatrix root = psd_sqrt(rho);
    res.record(max_abs(root * root - rho));
  }
}

// Small-integer entries keep every product exact, so any difference would
// come from the entry layout.
ComplexMatrix random_integer_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (auto& x : m.reshaped())
    x = Complex(std::floor(rng.uniform(-8.0, 8.0)), std::floor(rng.uniform(-8.0, 8.0)));
  return m;
}

void tensor_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 20); ++t) {
    const ComplexMatrix a = random_integer_matrix(rng, 2, 3);
    const ComplexMatrix b = random_integer_matrix(rng, 3, 2);
    const ComplexMatrix c = random_integer_matrix(rng, 2, 2);
    res.record(max_abs(tensor(tensor(a, b), c) - tensor(a, tensor(b, c))));
  }
}

void twirl_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const DensityMatrix rho = isotropic_state(IsotropicParams(n, rng.uniform()));
    for (std::size_t t = 0; t < scaled(o.trials, 20); ++t) {
      const ComplexMatrix u = random_unitary(rng, n);
      const ComplexMatrix w = tensor(u, u.conjugate().eval());
      res.record(max_abs(w * rho.matrix() * w.adjoint() - rho.matrix()));
    }
  }
}

void fidelity_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const IsotropicParams par(2 + t % 7, rng.uniform());
    const ComplexVector phi = maximally_entangled(par.n).amplitudes();
    const double overlap = phi.dot(isotropic_state(par).matrix() * phi).real();
    res.record(std::abs(overlap - fidelity_isotropic(par)));
  }
}

void noisy_pure_limit_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const double lam0 = rng.uniform(0.5, 1.0);
    const DensityMatrix pure = DensityMatrix::from_pure(schmidt_pure(SchmidtSpectrum::qubit(lam0)));
    res.record(max_abs(noisy_qubit_pair(0.0, lam0).matrix() - pure.matrix()));
  }
}

struct ProjectionCase {
  DimSignature sig;
  MeasurementBasis basis;
  std::vector<std::size_t> measured;
};

std::vector<ProjectionCase> projection_cases() {
  return {{DimSignature{2, 2, 2, 2}, bell_basis(), {1, 2}},
          {DimSignature{3, 3, 3, 3}, qudit_chi_basis(3), {1, 2}},
          {DimSignature::uniform(6, 2), ghz_basis(), {1, 3, 5}}};
}

void completeness_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (const auto& c : projection_cases())
    for (std::size_t t = 0; t < scaled(o.trials, 10); ++t) {
      const DensityMatrix rho(random_density(rng, c.sig.total(), 1 + t % 4), c.sig);
      double total = 0.0;
      for (const auto& out : project(rho, c.basis, c.measured)) total += out.probability;
      res.record(std::abs(total - 1.0));
    }
}

void pure_purity_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (const auto& c : projection_cases())
    for (std::size_t t = 0; t < scaled(o.trials, 10); ++t) {
      const DensityMatrix rho =
          DensityMatrix::from_pure(PureState(random_pure(rng, c.sig.total()), c.sig));
      for (const auto& out : project(rho, c.basis, c.measured))
        if (out.post_state) res.record(std::abs(out.post_state->purity() - 1.0));
    }
}

void chi_resolution_suite(const VerifyOptions&, Rng&, Residual& res) {
  for (std::size_t n = 2; n <= 6; ++n) {
    const MeasurementBasis basis = qudit_chi_basis(n);
    if (basis.size() != n * n) res.record(kInf);
    const auto d = static_cast<Eigen::Index>(n * n);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& v : basis.vectors()) sum += v * v.adjoint();
    res.record(max_abs(sum - ComplexMatrix::Identity(d, d)));
  }
}

void wootters_pure_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 100); ++t) {
    const SchmidtSpectrum s = random_spectrum(rng, 2);
    const double w = wootters_concurrence(DensityMatrix::from_pure(schmidt_pure(s)));
    res.record(std::abs(w - concurrence_pure_qubit(s)));
  }
}

void x_state_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const double p = rng.uniform();
    const double lam0 = rng.uniform();
    const DensityMatrix rho = noisy_qubit_pair(p, lam0);
    res.record(std::abs(x_state_concurrence(rho) - wootters_concurrence(rho)));
    for (const auto& out : swap_noisy_qubits(p, lam0).outcomes)
      if (out.post_state)
        res.record(std::abs(x_state_concurrence(*out.post_state) -
                            wootters_concurrence(*out.post_state)));
  }
}

void i_qubit_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 100); ++t) {
    const SchmidtSpectrum s = random_spectrum(rng, 2);
    res.record(std::abs(i_concurrence_pure(s) - 2.0 * std::sqrt(s[0] * s[1])));
  }
}

constexpr std::size_t kConcavityPoints = 1000;

void q_minimum_suite(const VerifyOptions&, Rng&, Residual& res) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const double lo = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < kConcavityPoints; ++k) {
      const double f = lo + (1.0 - lo) * grid_point(k, kConcavityPoints);
      const double q1 = q_branch(n, 1, f).q_value;
      for (std::size_t r = 2; r < n; ++r)
        if (f >= static_cast<double>(r) / static_cast<double>(n))
          res.record(std::max(0.0, q1 - q_branch(n, r, f).q_value));
      res.record(std::abs(q_minimum(n, f) - q1));
    }
  }
}

void q_concavity_suite(const VerifyOptions&, Rng&, Residual& res) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const double lo = 1.0 / static_cast<double>(n);
    std::vector<double> q(kConcavityPoints);
    for (std::size_t k = 0; k < kConcavityPoints; ++k)
      q[k] = q_branch(n, 1, lo + (1.0 - lo) * grid_point(k, kConcavityPoints)).q_value;
    for (std::size_t k = 1; k + 1 < kConcavityPoints; ++k)
      res.record(std::max(0.0, q[k - 1] - 2.0 * q[k] + q[k + 1]));
  }
}

void q_constraint_suite(const VerifyOptions&, Rng&, Residual& res) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const double nd = static_cast<double>(n);
    for (std::size_t r = 1; r < n; ++r) {
      const double rd = static_cast<double>(r);
      for (std::size_t k = 0; k < 200; ++k) {
        const double f = rd / nd + (1.0 - rd / nd) * grid_point(k, 200);
        const QSolution s = q_branch(n, r, f);
        res.record(std::abs(rd * s.alpha * s.alpha + (nd - rd) * s.beta * s.beta - 1.0));
        res.record(std::abs(rd * s.alpha + (nd - rd) * s.beta - std::sqrt(f * nd)));
      }
    }
  }
}

void q_brute_force_suite(const VerifyOptions& o, Rng&, Residual& res) {
  const std::size_t points = scaled(o.trials, 40);
  for (std::size_t k = 1; k <= points; ++k) {
    const double f = 1.0 / 3.0 + (2.0 / 3.0) * static_cast<double>(k) /
                                      static_cast<double>(points + 1);
    res.record(std::abs(q_brute_force_n3(f, 1e-3) - q_branch(3, 1, f).q_value));
  }
}

void chord_suite(const VerifyOptions&, Rng&, Residual& res) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const double inv = 1.0 / static_cast<double>(n);
    res.record(std::abs(isotropic_i_concurrence_from_fidelity(n, inv)));
    res.record(std::abs(isotropic_i_concurrence_from_fidelity(n, 1.0) -
                        std::sqrt(2.0 * (1.0 - inv))));
  }
}

void product_rule_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  const MeasurementBasis bell = bell_basis();
  for (std::size_t t = 0; t < scaled(o.trials, 200); ++t) {
    const SchmidtSpectrum s1 = random_spectrum(rng, 2);
    const SchmidtSpectrum s2 = random_spectrum(rng, 2);
    res.record(std::abs(swap_pure_qubits(s1, s2, bell).average_concurrence -
                        o.closed_forms.pure_product(s1, s2)));
  }
}

void generalized_bell_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const double t0 = rng.uniform(0.0, std::numbers::pi / 2);
    const double t1 = rng.uniform(0.0, std::numbers::pi / 2);
    const auto phase = [&rng] { return std::polar(1.0, rng.uniform(0.0, 2 * std::numbers::pi)); };
    const MeasurementBasis basis =
        generalized_bell_basis(std::cos(t0) * phase(), std::sin(t0) * phase(),
                               std::cos(t1) * phase(), std::sin(t1) * phase());
    const SwapReport r =
        swap_pure_qubits(random_spectrum(rng, 2), random_spectrum(rng, 2), basis);
    res.record(r.closed_form_value ? r.discrepancy() : kInf);
  }
}

void chain_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    std::vector<SchmidtSpectrum> chain;
    for (std::size_t k = 0; k < 3 + t % 2; ++k) chain.push_back(random_spectrum(rng, 2));
    res.record(std::abs(swap_chain(chain) - swap_chain_oracle(chain)));
  }
}

void ghz_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 100); ++t) {
    const SchmidtSpectrum s1 = random_spectrum(rng, 2);
    const SchmidtSpectrum s2 = random_spectrum(rng, 2);
    const SchmidtSpectrum s3 = random_spectrum(rng, 2);
    const double product =
        concurrence_pure_qubit(s1) * concurrence_pure_qubit(s2) * concurrence_pure_qubit(s3);
    res.record(std::abs(ghz_swap(s1, s2, s3).average_concurrence - product));
  }
}

std::size_t noisy_grid(std::size_t trials) { return std::clamp<std::size_t>(trials / 2, 5, 50); }

// Visits the (p, lambda0) grid with the oracle report and the closed form.
template <typename Fn>
void over_noisy_grid(const VerifyOptions& o, Fn&& fn) {
  const std::size_t g = noisy_grid(o.trials);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const double p = grid_point(i, g);
      const double lam0 = grid_point(j, g);
      fn(p, lam0);
    }
}

bool is_phi(const std::string& label) { return label.starts_with("Phi"); }

void noisy_probability_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_noisy_grid(o, [&](double p, double lam0) {
    const NoisyQubitSwap cf = o.closed_forms.noisy_qubit(p, lam0);
    for (const auto& out : swap_noisy_qubits(p, lam0).outcomes)
      res.record(std::abs(out.probability - (is_phi(out.label) ? cf.p_phi : cf.p_psi)));
  });
}

void noisy_concurrence_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_noisy_grid(o, [&](double p, double lam0) {
    const NoisyQubitSwap cf = o.closed_forms.noisy_qubit(p, lam0);
    const SwapReport r = swap_noisy_qubits(p, lam0);
    for (std::size_t k = 0; k < r.outcomes.size(); ++k)
      res.record(std::abs(r.per_outcome_concurrence[k] -
                          (is_phi(r.outcomes[k].label) ? cf.c_phi : cf.c_psi)));
    res.record(std::abs(r.average_concurrence - cf.c_av));
  });
}

void noisy_completeness_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_noisy_grid(o, [&](double p, double lam0) {
    const NoisyQubitSwap cf = o.closed_forms.noisy_qubit(p, lam0);
    res.record(std::abs(2.0 * (cf.p_phi + cf.p_psi) - 1.0));
  });
}

void upper_bound_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_noisy_grid(o, [&](double p, double lam0) {
    res.record(std::max(0.0, o.closed_forms.noisy_qubit(p, lam0).c_av -
                                 noisy_upper_bound(p, lam0)));
  });
}

double ratio(const VerifyOptions& o, double p, double lam0) {
  const double cx = noisy_input_concurrence(p, lam0);
  return o.closed_forms.noisy_qubit(p, lam0).c_av / (cx * cx);
}

void ratio_pure_limit_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_noisy_grid(o, [&](double p, double lam0) {
    if (p == 0.0 && lam0 > 0.0 && lam0 < 1.0) res.record(std::abs(ratio(o, 0.0, lam0) - 1.0));
  });
}

void ratio_monotone_suite(const VerifyOptions& o, Rng&, Residual& res) {
  constexpr std::size_t kPoints = 200;
  for (double lam0 : {0.01, 0.025, 0.1, 0.15, 0.25, 0.5}) {
    const double p_end = 1.0 - 1.0 / (1.0 + 4.0 * std::sqrt(lam0 * (1.0 - lam0)));
    double prev = ratio(o, 0.0, lam0);
    for (std::size_t k = 1; k < kPoints; ++k) {
      const double cur = ratio(o, static_cast<double>(k) * p_end / kPoints, lam0);
      res.record(std::max(0.0, cur - prev));
      prev = cur;
    }
  }
}

void qudit_oracle_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
      const SchmidtSpectrum s1 = random_spectrum(rng, n);
      const SchmidtSpectrum s2 = random_spectrum(rng, n);
      res.record(std::abs(qudit_oracle(s1, s2) - o.closed_forms.qudit_average(s1, s2)));
    }
}

void qudit_qubit_reduction_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
    const SchmidtSpectrum s1 = random_spectrum(rng, 2);
    const SchmidtSpectrum s2 = random_spectrum(rng, 2);
    res.record(std::abs(o.closed_forms.qudit_average(s1, s2) -
                        concurrence_pure_qubit(s1) * concurrence_pure_qubit(s2)));
  }
}

void partner_suite(const VerifyOptions& o, Rng& rng, Residual& res) {
  for (std::size_t n = 2; n <= 8; ++n) {
    const SchmidtSpectrum flat = SchmidtSpectrum::uniform(n);
    for (std::size_t t = 0; t < scaled(o.trials, 50); ++t) {
      const SchmidtSpectrum s = random_spectrum(rng, n);
      const double target = i_concurrence_pure(s);
      res.record(std::abs(qudit_oracle(s, flat) - target));
      res.record(std::abs(o.closed_forms.qudit_average(s, flat) - target));
    }
  }
}

template <typename Fn>
void over_isotropic(const VerifyOptions& o, Fn&& fn) {
  const std::size_t g = std::clamp<std::size_t>(o.trials / 5, 3, 20);
  for (std::size_t n = 2; n <= kNoisyQuditOracleMax; ++n)
    for (std::size_t k = 0; k < g; ++k) fn(IsotropicParams(n, grid_point(k, g)));
}

void isotropic_probability_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_isotropic(o, [&](const IsotropicParams& par) {
    res.record(isotropic_swap_check(par).max_probability_error);
  });
}

void isotropic_alignment_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_isotropic(o, [&](const IsotropicParams& par) {
    res.record(isotropic_swap_check(par).max_alignment_residual);
  });
}

void isotropic_output_suite(const VerifyOptions& o, Rng&, Residual& res) {
  over_isotropic(o, [&](const IsotropicParams& par) {
    const SwapReport r = swap_noisy_qudits(par);
    const auto [lo, hi] =
        std::minmax_element(r.per_outcome_concurrence.begin(), r.per_outcome_concurrence.end());
    res.record(*hi - *lo);
    res.record(r.discrepancy());
  });
}

void threshold_suite(const VerifyOptions&, Rng&, Residual& res) {
  const auto cx = [](double p) { return noisy_input_concurrence(p, 0.5); };
  res.record(std::abs(last_positive(cx, 0.0, 1.0) - qubit_input_threshold()));
  res.record(std::abs(qubit_input_threshold() - 2.0 / 3.0));
  const auto cav = [](double p) { return noisy_qubit_closed_form(p, 0.5).c_av; };
  res.record(std::abs(last_positive(cav, 0.0, 1.0) - qubit_output_threshold()));
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto in = [n](double p) { return isotropic_i_concurrence(IsotropicParams(n, p)); };
    const auto out = [n](double p) {
      return isotropic_i_concurrence(IsotropicParams(n, swapped_mixing(p)));
    };
    res.record(std::abs(last_positive(in, 0.0, 1.0) - isotropic_input_threshold(n)));
    res.record(std::abs(last_positive(out, 0.0, 1.0) - isotropic_output_threshold(n)));
  }
  res.record(std::abs(isotropic_output_threshold(2) - qubit_output_threshold()));
}

constexpr std::array kSuites{
    Suite{"linalg.partial_trace", 1e-12, partial_trace_suite},
    Suite{"linalg.eigvals_trace", 1e-10, eigvals_suite},
    Suite{"linalg.psd_sqrt", 1e-10, psd_sqrt_suite},
    Suite{"linalg.tensor_associativity", 0.0, tensor_suite},
    Suite{"states.isotropic_twirl", 1e-10, twirl_suite},
    Suite{"states.isotropic_fidelity", 1e-12, fidelity_suite},
    Suite{"states.noisy_pure_limit", 1e-15, noisy_pure_limit_suite},
    Suite{"measurement.completeness", 1e-10, completeness_suite},
    Suite{"measurement.pure_post_purity", 1e-10, pure_purity_suite},
    Suite{"measurement.chi_resolution", 1e-12, chi_resolution_suite},
    Suite{"concurrence.wootters_pure", 1e-10, wootters_pure_suite},
    Suite{"concurrence.x_state", 1e-10, x_state_suite},
    Suite{"concurrence.i_concurrence_qubit", 1e-12, i_qubit_suite},
    Suite{"concurrence.q1_minimum", 1e-12, q_minimum_suite},
    Suite{"concurrence.q1_concavity", 1e-10, q_concavity_suite},
    Suite{"concurrence.q_constraints", 1e-10, q_constraint_suite},
    Suite{"concurrence.q_brute_force_n3", 2e-3, q_brute_force_suite},
    Suite{"concurrence.chord_endpoints", 0.0, chord_suite},
    Suite{"swap.product_rule", 1e-10, product_rule_suite},
    Suite{"swap.generalized_bell", 1e-10, generalized_bell_suite},
    Suite{"swap.chain_rule", 1e-9, chain_suite},
    Suite{"swap.ghz_rule", 1e-10, ghz_suite},
    Suite{"swap.noisy_probabilities", 1e-12, noisy_probability_suite},
    Suite{"swap.noisy_concurrences", 1e-10, noisy_concurrence_suite},
    Suite{"swap.noisy_completeness", 1e-12, noisy_completeness_suite},
    Suite{"swap.noisy_upper_bound", 1e-15, upper_bound_suite},
    Suite{"swap.ratio_pure_limit", 1e-12, ratio_pure_limit_suite},
    Suite{"swap.ratio_monotone", 1e-12, ratio_monotone_suite},
    Suite{"swap.qudit_oracle", 1e-9, qudit_oracle_suite},
    Suite{"swap.qudit_qubit_reduction", 1e-12, qudit_qubit_reduction_suite},
    Suite{"swap.maximally_entangled_partner", 1e-10, partner_suite},
    Suite{"swap.isotropic_probabilities", 1e-12, isotropic_probability_suite},
    Suite{"swap.isotropic_alignment", 1e-10, isotropic_alignment_suite},
    Suite{"swap.isotropic_outputs", 1e-10, isotropic_output_suite},
    Suite{"swap.thresholds", 1e-9, threshold_suite},
};

std::string scientific(double v) {
  if (std::isinf(v)) return "inf";
  std::array<char, 32> buf{};
  const auto r =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 3);
  return std::string(buf.data(), r.ptr);
}

}  // namespace

// Minimum of sqrt2 sqrt(1 - sum mu^4) over the N = 3 simplex slice
// sum mu^2 = 1, sum mu = sqrt(3F), mu >= 0, stepping mu_1 by `step` and
// solving the other two coordinates exactly.
double q_brute_force_n3(double f, double step) {
  if (!(f >= 1.0 / 3.0 && f <= 1.0)) throw std::invalid_argument("fidelity must lie in [1/3, 1]");
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("step must lie in (0, 1]");
  const double s = std::sqrt(3.0 * f);
  // mu_1 is feasible on [lo, hi]; the ends join the grid so that a single
  // feasible point (F = 1) is still found.
  const double half = std::sqrt(std::max(0.0, 6.0 - 2.0 * s * s));
  const double lo = std::max(0.0, (s - half) / 3.0);
  const double hi = std::min(1.0, (s + half) / 3.0);
  std::vector<double> candidates{lo, hi};
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / step));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x1 = static_cast<double>(i) * step;
    if (x1 > lo && x1 < hi) candidates.push_back(x1);
  }
  double best = kInf;
  for (double x1 : candidates) {
    const double rest = s - x1;
    const double disc = std::max(0.0, 2.0 * (1.0 - x1 * x1) - rest * rest);
    const double x2 = 0.5 * (rest + std::sqrt(disc));
    const double x3 = std::max(0.0, 0.5 * (rest - std::sqrt(disc)));
    const double quartic = std::pow(x1, 4) + std::pow(x2, 4) + std::pow(x3, 4);
    best = std::min(best, std::numbers::sqrt2 * std::sqrt(std::max(0.0, 1.0 - quartic)));
  }
  return best;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("trials must be positive");
  std::vector<SuiteResult> results;
  results.reserve(kSuites.size());
  for (std::size_t k = 0; k < kSuites.size(); ++k) {
    const Suite& suite = kSuites[k];
    // Each suite gets its own stream so suites stay independent of each other.
    Rng rng(options.seed + 0x9E3779B97F4A7C15ULL * (k + 1));
    Residual res;
    try {
      suite.run(options, rng, res);
    } catch (const std::exception&) {
      res.record(kInf);
    }
    results.push_back({suite.name, res.worst(), suite.tolerance, res.worst() <= suite.tolerance});
  }
  return results;
}

std::string format_results(const std::vector<SuiteResult>& results) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::string line = r.name;
    line.resize(std::max<std::size_t>(line.size() + 2, 36), ' ');
    line += "max_residual=" + scientific(r.max_residual);
    line += "  tol=" + scientific(r.tolerance);
    line += r.passed ? "  PASS\n" : "  FAIL\n";
    out += line;
    if (r.passed) ++passed;
  }
  out += std::to_string(passed) + "/" + std::to_string(results.size()) + " suites passed\n";
  return out;
}

}  // namespace concswap
