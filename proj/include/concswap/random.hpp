// Seeded random draws with bit-identical output on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The std distributions are not, so the mappings below are done
// by hand.

#pragma once

#include <cstdint>
#include <random>

#include "concswap/linalg.hpp"
#include "concswap/states.hpp"

namespace concswap {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal by Box-Muller (one draw per call, the partner is dropped).
  double normal();

  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
};

/// n strictly positive weights normalized to 1.
SchmidtSpectrum random_spectrum(Rng& rng, std::size_t n);

/// Haar unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
ComplexMatrix random_unitary(Rng& rng, std::size_t n);

/// G G^dagger / tr for a complex Ginibre G of size dim x rank.
ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank);

}  // namespace concswap
