#include "concswap/swap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace concswap {

namespace {

constexpr double kAlignmentTol = 1e-10;

void require_qubit(const SchmidtSpectrum& s) {
  if (s.size() != 2) throw std::invalid_argument("expected a qubit (two-term) spectrum");
}

// Fills the per-outcome list and the weighted average.
void tally(SwapReport& report, std::vector<SwapOutcome> outcomes, auto&& concurrence) {
  report.outcomes = std::move(outcomes);
  report.per_outcome_concurrence.clear();
  report.average_concurrence = 0.0;
  for (const auto& o : report.outcomes) {
    const double c = o.post_state ? concurrence(*o.post_state) : 0.0;
    report.per_outcome_concurrence.push_back(c);
    report.average_concurrence += o.probability * c;
  }
}

std::vector<SwapOutcome> to_density(const std::vector<PureOutcome>& pure) {
  std::vector<SwapOutcome> out;
  out.reserve(pure.size());
  for (const auto& o : pure) {
    SwapOutcome s{o.label, o.probability, std::nullopt};
    if (o.post_state) s.post_state = DensityMatrix::from_pure(*o.post_state);
    out.push_back(std::move(s));
  }
  return out;
}

// Pure-state counterpart of tally() that works on the state vectors.
void tally_pure(SwapReport& report, const std::vector<PureOutcome>& outcomes,
                auto&& concurrence) {
  report.outcomes = to_density(outcomes);
  report.per_outcome_concurrence.clear();
  report.average_concurrence = 0.0;
  for (const auto& o : outcomes) {
    const double c = o.post_state ? concurrence(*o.post_state) : 0.0;
    report.per_outcome_concurrence.push_back(c);
    report.average_concurrence += o.probability * c;
  }
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::oracle: return "oracle";
    case Method::closed_form: return "closed_form";
    case Method::both: return "both";
  }
  return "unknown";
}

double SwapReport::discrepancy() const {
  if (!closed_form_value || method_tag != Method::both) return 0.0;
  return std::abs(average_concurrence - *closed_form_value);
}

SwapReport swap_pure_qubits(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2,
                            const MeasurementBasis& basis) {
  require_qubit(s1);
  require_qubit(s2);
  const PureState joint = tensor(schmidt_pure(s1), schmidt_pure(s2));
  constexpr std::array<std::size_t, 2> bc{1, 2};
  SwapReport report;
  tally_pure(report, project(joint, basis, bc),
             [](const PureState& ad) { return concurrence_2xd_pure(ad, 0); });
  report.method_tag = Method::oracle;
  if (const auto par = bell_params(basis)) {
    const double weight = std::abs(par->alpha0 * par->beta0) + std::abs(par->alpha1 * par->beta1);
    report.closed_form_value = 4.0 * weight * std::sqrt(s1[0] * s1[1] * s2[0] * s2[1]);
    report.method_tag = Method::both;
  }
  return report;
}

double max_average_concurrence_pure(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2) {
  return concurrence_pure_qubit(s1) * concurrence_pure_qubit(s2);
}

double swap_chain(std::span<const SchmidtSpectrum> spectra) {
  if (spectra.size() < 2) throw std::invalid_argument("a chain needs at least two pairs");
  double product = 1.0;
  for (const auto& s : spectra) product *= concurrence_pure_qubit(s);
  return product;
}

double swap_chain_oracle(std::span<const SchmidtSpectrum> spectra) {
  if (spectra.size() < 2) throw std::invalid_argument("a chain needs at least two pairs");
  for (const auto& s : spectra) require_qubit(s);

  struct Branch {
    double weight;
    PureState end_pair;
    bool flipped;  // last outcome was Psi+- (|01> +- |10>)
  };
  std::vector<Branch> branches{{1.0, schmidt_pure(spectra[0]), false}};
  const MeasurementBasis bell = bell_basis();
  constexpr std::array<std::size_t, 2> middle{1, 2};

  for (std::size_t k = 1; k < spectra.size(); ++k) {
    const double l0 = spectra[k][0], l1 = spectra[k][1];
    std::vector<Branch> next;
    for (const auto& b : branches) {
      ComplexVector pair = ComplexVector::Zero(4);
      if (b.flipped) {
        pair(1) = std::sqrt(l0);
        pair(2) = std::sqrt(l1);
      } else {
        pair(0) = std::sqrt(l0);
        pair(3) = std::sqrt(l1);
      }
      const PureState joint = tensor(b.end_pair, PureState(pair, DimSignature{2, 2}));
      for (auto& o : project(joint, bell, middle)) {
        if (!o.post_state) continue;
        const bool psi = o.label.starts_with("Psi");
        next.push_back({b.weight * o.probability, std::move(*o.post_state), psi});
      }
    }
    branches = std::move(next);
  }

  double average = 0.0;
  for (const auto& b : branches) average += b.weight * concurrence_2xd_pure(b.end_pair, 0);
  return average;
}

SwapReport ghz_swap(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2,
                    const SchmidtSpectrum& s3) {
  require_qubit(s1);
  require_qubit(s2);
  require_qubit(s3);
  const PureState joint =
      tensor(tensor(schmidt_pure(s1), schmidt_pure(s2)), schmidt_pure(s3));
  constexpr std::array<std::size_t, 3> bdf{1, 3, 5};
  SwapReport report;
  tally_pure(report, project(joint, ghz_basis(), bdf),
             [](const PureState& ace) { return concurrence_2xd_pure(ace, 0); });
  report.closed_form_value = concurrence_pure_qubit(s1) * concurrence_pure_qubit(s2) *
                             concurrence_pure_qubit(s3);
  report.method_tag = Method::both;
  return report;
}

NoisyQubitSwap noisy_qubit_closed_form(double p, double lam0) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing parameter must lie in [0, 1]");
  if (!(lam0 >= 0.0 && lam0 <= 1.0)) throw std::invalid_argument("lambda0 must lie in [0, 1]");
  const double lam1 = 1.0 - lam0;
  const double q2 = (1.0 - p) * (1.0 - p);
  const double x = lam0 * lam1;
  const double noise = p * (2.0 - p);

  NoisyQubitSwap r;
  r.p_phi = noise / 4.0 + 0.5 * q2 * (lam0 * lam0 + lam1 * lam1);
  r.p_psi = noise / 4.0 + q2 * x;
  const double phi_gap = q2 * x - noise / 8.0;
  const double psi_gap =
      q2 * x - (p / 8.0) * std::sqrt(p * p + 4.0 * p * (1.0 - p) + 16.0 * q2 * x);
  r.c_phi = (r.p_phi > 0.0) ? std::max(0.0, phi_gap) / r.p_phi : 0.0;
  r.c_psi = (r.p_psi > 0.0) ? std::max(0.0, psi_gap) / r.p_psi : 0.0;
  r.c_av = 2.0 * r.p_phi * r.c_phi + 2.0 * r.p_psi * r.c_psi;
  return r;
}

double noisy_input_concurrence(double p, double lam0) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing parameter must lie in [0, 1]");
  if (!(lam0 >= 0.0 && lam0 <= 1.0)) throw std::invalid_argument("lambda0 must lie in [0, 1]");
  return 2.0 * std::max(0.0, (1.0 - p) * std::sqrt(lam0 * (1.0 - lam0)) - p / 4.0);
}

SwapReport swap_noisy_qubits(double p, double lam0) {
  const DensityMatrix pair = noisy_qubit_pair(p, lam0);
  const DensityMatrix joint = tensor(pair, pair);
  constexpr std::array<std::size_t, 2> bc{1, 2};
  SwapReport report;
  tally(report, project(joint, bell_basis(), bc),
        [](const DensityMatrix& ad) { return wootters_concurrence(ad); });
  report.closed_form_value = noisy_qubit_closed_form(p, lam0).c_av;
  report.method_tag = Method::both;
  return report;
}

std::optional<std::pair<double, double>> output_entanglement_windows(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mixing parameter must lie in [0, 1]");
  if (p >= qubit_output_threshold()) return std::nullopt;
  const double q2 = 2.0 * (1.0 - p) * (1.0 - p);
  const double phi = 0.5 * std::sqrt(std::max(0.0, 1.0 - p * (2.0 - p) / q2));
  const double psi =
      0.5 * std::sqrt(std::max(0.0, 1.0 - (p * p + p * std::sqrt(2.0 * p * (2.0 - p))) / q2));
  return std::pair{phi, psi};
}

double noisy_upper_bound(double p, double lam0) {
  return 4.0 * (1.0 - p) * (1.0 - p) * lam0 * (1.0 - lam0);
}

double ratio_cav_over_cx2(double p, double lam0) {
  const double cx = noisy_input_concurrence(p, lam0);
  if (cx <= 0.0) throw std::domain_error("input state is separable; ratio undefined");
  return noisy_qubit_closed_form(p, lam0).c_av / (cx * cx);
}

double qudit_average_i_concurrence(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2) {
  if (s1.size() != s2.size()) throw std::invalid_argument("spectra must have equal length");
  const std::size_t n = s1.size();
  double total = 0.0;
  for (std::size_t shift = 0; shift < n; ++shift) {
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = s1[j] * s2[(j + shift) % n];
      sum += t;
      sum_sq += t * t;
    }
    total += std::sqrt(std::max(0.0, sum * sum - sum_sq));
  }
  return std::numbers::sqrt2 * total;
}

SwapReport swap_pure_qudits(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2) {
  if (s1.size() != s2.size()) throw std::invalid_argument("spectra must have equal length");
  const std::size_t n = s1.size();
  SwapReport report;
  const double closed = qudit_average_i_concurrence(s1, s2);
  report.closed_form_value = closed;
  if (n > kPureQuditOracleMax) {
    report.average_concurrence = closed;
    report.method_tag = Method::closed_form;
    return report;
  }
  const PureState joint = tensor(schmidt_pure(s1), schmidt_pure(s2));
  constexpr std::array<std::size_t, 2> bc{1, 2};
  tally_pure(report, project(joint, qudit_chi_basis(n), bc),
             [](const PureState& ad) { return i_concurrence_pure(ad); });
  report.method_tag = Method::both;
  return report;
}

double small_epsilon_bound(std::size_t n, double eps) {
  if (n < 2) throw std::invalid_argument("dimension must be >= 2");
  const double nd = static_cast<double>(n);
  if (!(eps >= 0.0 && eps < 2.0 * (nd - 1.0) / (nd * nd)))
    throw std::invalid_argument("epsilon must satisfy 0 <= eps < 2(N-1)/N^2");
  const double delta = 0.5 - 0.5 * std::sqrt(1.0 - 2.0 * eps);
  return 2.0 * std::sqrt(nd * delta) + nd * delta;
}

double block_example_value(std::size_t m) {
  if (m < 2) throw std::invalid_argument("block size must be >= 2");
  auto partial = [](std::size_t upto) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= upto; ++k)
      acc += std::sqrt(static_cast<double>(k) * static_cast<double>(k - 1));
    return acc;
  };
  const double md = static_cast<double>(m);
  return std::numbers::sqrt2 / (md * md) * (partial(m) + partial(m - 1));
}

std::pair<double, double> block_example_bounds(std::size_t m) {
  if (m < 2) throw std::invalid_argument("block size must be >= 2");
  const double md = static_cast<double>(m);
  const double ratio = (md - 1.0) / md;
  const double lower = std::numbers::sqrt2 * ratio * ratio;
  const double upper = (md - 1.0) / (std::numbers::sqrt2 * md) *
                       (std::sqrt((md + 1.0) / (md - 1.0)) + std::sqrt(1.0 - 2.0 / md));
  return {lower, upper};
}

double swapped_mixing(double p) { return p * (2.0 - p); }

ComplexMatrix alignment_unitary(std::size_t n, std::size_t m, std::size_t shift) {
  const auto nn = static_cast<Eigen::Index>(n);
  ComplexMatrix u = ComplexMatrix::Zero(nn, nn);
  for (std::size_t r = 0; r < n; ++r) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>((m * r) % n) / static_cast<double>(n);
    const std::size_t row = (r + n - shift % n) % n;
    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(r)) = std::polar(1.0, angle);
  }
  return u;
}

IsotropicSwapCheck isotropic_swap_check(const IsotropicParams& par) {
  const std::size_t n = par.n;
  if (n > kNoisyQuditOracleMax)
    throw std::invalid_argument("isotropic swap oracle is limited to N <= 3");
  const DensityMatrix pair = isotropic_state(par);
  const DensityMatrix joint = tensor(pair, pair);
  constexpr std::array<std::size_t, 2> bc{1, 2};

  IsotropicSwapCheck check;
  check.outcomes = project(joint, qudit_chi_basis(n), bc);
  const ComplexMatrix target = isotropic_state(IsotropicParams(n, swapped_mixing(par.p))).matrix();
  const double expected = 1.0 / static_cast<double>(n * n);
  const ComplexVector phi = maximally_entangled(n).amplitudes();
  const auto identity = ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < check.outcomes.size(); ++k) {
    const auto& o = check.outcomes[k];
    check.max_probability_error =
        std::max(check.max_probability_error, std::abs(o.probability - expected));
    if (!o.post_state) {
      check.max_alignment_residual = std::numeric_limits<double>::infinity();
      check.aligned_fidelity.push_back(0.0);
      continue;
    }
    const ComplexMatrix u = tensor(alignment_unitary(n, k / n, k % n), identity);
    const ComplexMatrix aligned = u.adjoint() * o.post_state->matrix() * u;
    check.max_alignment_residual =
        std::max(check.max_alignment_residual, (aligned - target).cwiseAbs().maxCoeff());
    check.aligned_fidelity.push_back(phi.dot(aligned * phi).real());
  }
  return check;
}

SwapReport swap_noisy_qudits(const IsotropicParams& par) {
  const double closed = isotropic_i_concurrence(IsotropicParams(par.n, swapped_mixing(par.p)));
  SwapReport report;
  report.closed_form_value = closed;
  if (par.n > kNoisyQuditOracleMax) {
    report.average_concurrence = closed;
    report.method_tag = Method::closed_form;
    return report;
  }
  IsotropicSwapCheck check = isotropic_swap_check(par);
  if (check.max_alignment_residual > kAlignmentTol)
    throw NumericalError("swap output is not locally equivalent to an isotropic state");
  // Each aligned output is isotropic, so its I-concurrence follows from its
  // own fidelity with the maximally entangled state.
  report.outcomes = std::move(check.outcomes);
  for (std::size_t k = 0; k < report.outcomes.size(); ++k) {
    const double c = report.outcomes[k].post_state
                         ? isotropic_i_concurrence_from_fidelity(par.n, check.aligned_fidelity[k])
                         : 0.0;
    report.per_outcome_concurrence.push_back(c);
    report.average_concurrence += report.outcomes[k].probability * c;
  }
  report.method_tag = Method::both;
  return report;
}

double qubit_input_threshold() { return 2.0 / 3.0; }

double qubit_output_threshold() { return 1.0 - 1.0 / std::numbers::sqrt3; }

double isotropic_input_threshold(std::size_t n) {
  const double nd = static_cast<double>(n);
  return nd / (nd + 1.0);
}

double isotropic_output_threshold(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 1.0 - std::sqrt(nd * nd * nd - nd * nd - nd + 1.0) / (nd * nd - 1.0);
}

}  // namespace concswap
