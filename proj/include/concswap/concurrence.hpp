// Entanglement quantifiers: concurrence and I-concurrence.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "concswap/states.hpp"

namespace concswap {

/// 2 sqrt(lambda0 lambda1) of a two-term spectrum.
double concurrence_pure_qubit(const SchmidtSpectrum& s);

/// (sigma_y x sigma_y) m* (sigma_y x sigma_y) for a 4x4 operator.
ComplexMatrix spin_flip(const ComplexMatrix& m);

/// Two-qubit concurrence max(0, r1 - r2 - r3 - r4), where r_i are the
/// eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)) in decreasing order.
/// The r_i are taken as the singular values of sqrt(rho) sqrt(rho~), which
/// are the same numbers without a second square root.
double wootters_concurrence(const DensityMatrix& rho);

/// Closed form for two-qubit X states,
///   2 max(0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)).
/// Throws if any entry off the diagonal and anti-diagonal exceeds 1e-12.
double x_state_concurrence(const DensityMatrix& rho);

/// Open interval of lambda0 for which p I/4 + (1-p)|psi><psi| is entangled:
/// (1/2 - D, 1/2 + D), D = (1/2) sqrt(1 - p^2 / (4 (1-p)^2)). Empty for
/// p >= 2/3.
std::optional<std::pair<double, double>> input_entanglement_window(double p);

/// sqrt(2 (1 - sum lambda_j^2)).
double i_concurrence_pure(const SchmidtSpectrum& s);

/// I-concurrence of a bipartite pure state (first subsystem vs the rest of
/// a two-subsystem signature).
double i_concurrence_pure(const PureState& psi);

/// Concurrence of a qubit against a d-dimensional partner, from the qubit's
/// two Schmidt coefficients.
double concurrence_2xd_pure(const SchmidtSpectrum& s);

/// Same quantity for qubit `qubit` of a multi-qubit pure state against all
/// other subsystems.
double concurrence_2xd_pure(const PureState& psi, std::size_t qubit);

/// One branch of the constrained minimization behind the isotropic-state
/// I-concurrence: r entries equal to alpha^2 and N - r equal to beta^2.
struct QSolution {
  std::size_t r = 1;
  double alpha = 0.0;
  double beta = 0.0;
  /// sqrt(2) sqrt(1 - r alpha^4 - (N-r) beta^4).
  double q_value = 0.0;
};

/// Closed-form branch (alpha_r^+, beta_r^+) at fidelity f. Requires
/// 1 <= r <= N-1 and r/N <= f <= 1.
QSolution q_branch(std::size_t n, std::size_t r, double f);

/// Point-wise minimum of q_branch over all admissible r.
double q_minimum(std::size_t n, double f);

/// I-concurrence of an isotropic state from its fidelity: zero for f <= 1/N,
/// the chord from (1/N, 0) to (1, sqrt(2(1-1/N))) above.
double isotropic_i_concurrence_from_fidelity(std::size_t n, double f);

double isotropic_i_concurrence(const IsotropicParams& par);

}  // namespace concswap
