#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cmr/lax.hpp"
#include "cmr/matrix.hpp"
#include "cmr/potentials.hpp"

namespace cmr {

/// Deterministic sampler used by tests, suites and the CLI.
///
/// Coordinates are sorted-uniform in [0.1, 2.0] with minimum gap 0.05,
/// rescaled by π/(4a) in the trigonometric case; momenta are uniform in [−1, 1].
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);

  std::vector<double> coordinates(const ModelCase& c, int n);
  PhasePoint<double> phase_point(const ModelCase& c, int n);

  /// Exact rational point: the float sample rounded to multiples of 1/1000
  /// (gaps stay ≥ 0.05 after rounding).
  PhasePoint<Rational> rational_phase_point(int n);

  /// Entries uniform in [−1, 1], resampled until the 2-norm condition number is < 50.
  CMatrix well_conditioned(int n);

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

Rational to_rational(double x, long denominator = 1000);

/// 2-norm condition number via singular values.
double condition_number(const CMatrix& m);

}  // namespace cmr
