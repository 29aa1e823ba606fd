// Seeded invariant suites comparing the closed forms with brute force.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "concswap/swap.hpp"

namespace concswap {

/// The closed forms under test. Replacing one lets a test check that the
/// suites actually catch a wrong formula.
struct ClosedForms {
  std::function<double(const SchmidtSpectrum&, const SchmidtSpectrum&)> pure_product =
      max_average_concurrence_pure;
  std::function<NoisyQubitSwap(double, double)> noisy_qubit = noisy_qubit_closed_form;
  std::function<double(const SchmidtSpectrum&, const SchmidtSpectrum&)> qudit_average =
      qudit_average_i_concurrence;
};

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 20240521;
  /// Scales the randomized suites; 100 gives the full run.
  std::size_t trials = 100;
  ClosedForms closed_forms;
};

/// Brute-force minimum of sqrt2 sqrt(1 - sum mu^4) for N = 3 over amplitudes
/// with sum mu^2 = 1 and sum mu = sqrt(3F): mu_1 is stepped by `step`, the
/// other two are solved exactly.
double q_brute_force_n3(double f, double step);

std::vector<SuiteResult> run_verify(const VerifyOptions& options);

/// One "name  max_residual  tolerance  PASS|FAIL" line per suite.
std::string format_results(const std::vector<SuiteResult>& results);

}  // namespace concswap
