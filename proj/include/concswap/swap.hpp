// Entanglement swapping: brute-force simulation of the protocols next to
// their closed-form average concurrences.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "concswap/concurrence.hpp"
#include "concswap/measurement.hpp"
#include "concswap/states.hpp"

namespace concswap {

enum class Method { oracle, closed_form, both };

const char* to_string(Method m);

/// Result of one swapping protocol.
///
/// With Method::closed_form the outcome lists are empty and
/// average_concurrence holds the closed-form value.
struct SwapReport {
  std::vector<SwapOutcome> outcomes;
  std::vector<double> per_outcome_concurrence;
  double average_concurrence = 0.0;
  std::optional<double> closed_form_value;
  Method method_tag = Method::oracle;

  /// |average - closed form|, or 0 without a closed form.
  double discrepancy() const;
};

// Largest systems the brute-force path is run on.
inline constexpr std::size_t kPureQuditOracleMax = 6;
inline constexpr std::size_t kNoisyQuditOracleMax = 3;

/// Swap of two Schmidt-form qubit pairs (ab)(cd) with bc measured in
/// `basis`. The closed form 4(|a0 b0| + |a1 b1|) sqrt(l0 l1 l0' l1') is
/// attached when the basis has generalized Bell form.
SwapReport swap_pure_qubits(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2,
                            const MeasurementBasis& basis);

/// C_ab C_cd, the Bell-basis average.
double max_average_concurrence_pure(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2);

/// Product of the pair concurrences along a repeater chain.
double swap_chain(std::span<const SchmidtSpectrum> spectra);

/// Average end-to-end concurrence of a chain simulated one swap at a time:
/// the running end pair is joined with the next pair (Schmidt bases of the
/// new pair flipped after a Psi outcome) and the middle qubits are
/// Bell-measured, branching over every outcome.
double swap_chain_oracle(std::span<const SchmidtSpectrum> spectra);

/// Three pairs (ab)(cd)(ef), bdf measured in the GHZ basis. The per-outcome
/// value is the concurrence of qubit a against ce.
SwapReport ghz_swap(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2,
                    const SchmidtSpectrum& s3);

/// Closed forms for two identical depolarized pairs swapped in the Bell
/// basis. p_phi and p_psi are per-outcome probabilities (each of Phi+-,
/// Psi+-), c_phi and c_psi the corresponding output concurrences.
struct NoisyQubitSwap {
  double p_phi = 0.0;
  double p_psi = 0.0;
  double c_phi = 0.0;
  double c_psi = 0.0;
  double c_av = 0.0;
};

NoisyQubitSwap noisy_qubit_closed_form(double p, double lam0);

/// 2 max(0, (1-p) sqrt(lam0 lam1) - p/4).
double noisy_input_concurrence(double p, double lam0);

SwapReport swap_noisy_qubits(double p, double lam0);

/// Half widths (Delta_phi, Delta_psi) of the lambda0 windows around 1/2 in
/// which the Phi and Psi output states stay entangled. Empty for
/// p >= 1 - 1/sqrt3.
std::optional<std::pair<double, double>> output_entanglement_windows(double p);

/// 4 (1-p)^2 lam0 (1 - lam0).
double noisy_upper_bound(double p, double lam0);

/// Swap average over the squared input concurrence. Throws
/// std::domain_error when the input is separable.
double ratio_cav_over_cx2(double p, double lam0);

/// sqrt2 sum_n [ (sum_j l_j l'_{j+n})^2 - sum_j (l_j l'_{j+n})^2 ]^{1/2}.
double qudit_average_i_concurrence(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2);

/// Qudit pairs swapped in the chi basis; the oracle runs for N <= 6.
SwapReport swap_pure_qudits(const SchmidtSpectrum& s1, const SchmidtSpectrum& s2);

/// 2 sqrt(N D) + N D with D = 1/2 - sqrt(1 - 2 eps)/2; needs
/// 0 <= eps < 2(N-1)/N^2.
double small_epsilon_bound(std::size_t n, double eps);

/// Exact average I-concurrence for two flat M-term spectra embedded in
/// N > 2M dimensions.
double block_example_value(std::size_t m);

/// (lower, upper) bounds on block_example_value.
std::pair<double, double> block_example_bounds(std::size_t m);

/// p(2 - p): mixing parameter of the isotropic state equivalent to every
/// output of a noisy-qudit swap.
double swapped_mixing(double p);

/// U_a(m, n) = sum_r |r - n><r| e^{-2 pi i m r / N}. The adjoint maps the
/// chi_mn output state onto the isotropic state.
ComplexMatrix alignment_unitary(std::size_t n, std::size_t m, std::size_t shift);

struct IsotropicSwapCheck {
  std::vector<SwapOutcome> outcomes;
  /// <Phi_N| (U^dagger x I) rho_mn (U x I) |Phi_N> per outcome.
  std::vector<double> aligned_fidelity;
  /// max |P(m,n) - 1/N^2|.
  double max_probability_error = 0.0;
  /// max entrywise |(U^dagger x I) rho_mn (U x I) - rho(p')|.
  double max_alignment_residual = 0.0;
};

/// Brute-force swap of two isotropic pairs (N <= 3).
IsotropicSwapCheck isotropic_swap_check(const IsotropicParams& par);

SwapReport swap_noisy_qudits(const IsotropicParams& par);

double qubit_input_threshold();
double qubit_output_threshold();
double isotropic_input_threshold(std::size_t n);
double isotropic_output_threshold(std::size_t n);

}  // namespace concswap
