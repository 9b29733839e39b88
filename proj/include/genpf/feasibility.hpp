#pragma once

#include "genpf/rational.hpp"
#include "genpf/system.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace genpf {

enum class ArithmeticMode {
  Float,
  Exact,
  /// Float first; exact pivoting when the float optimum is too close to call
  /// or its witness fails exact certification.
  Auto,
};

std::string to_string(ArithmeticMode mode);

inline constexpr double kFloatFeasibilityTolerance = 1e-9;

struct FeasibilityVerdict {
  bool feasible = false;
  /// L1-normalised point of the simplex minimising the worst SR violation.
  /// When feasible it is the witness.
  std::vector<double> witness;
  /// Present whenever exact arithmetic produced or certified the witness.
  std::optional<std::vector<Rational>> exact_witness;
  /// max_i -R_i(witness); positive exactly when infeasible (up to tolerance).
  double max_violation = 0.0;
  /// Arithmetic that produced the verdict (Float or Exact).
  ArithmeticMode mode = ArithmeticMode::Float;
};

/// Is there X >= 0 with sum X = 1 and M- X <= (1/beta) M+ X ?
///
/// Solved as min t s.t. (beta M- - M+) X <= t, which also measures how far an
/// infeasible beta is from the boundary. Throws std::invalid_argument for
/// beta <= 0 or an invalid system.
FeasibilityVerdict feasible(const GainSystem& system, const Rational& beta,
                            ArithmeticMode mode = ArithmeticMode::Auto);

/// R_i(x) = (1/beta) TotS_i - TotR_i.
std::vector<Rational> residuals(const GainSystem& system, std::span<const Rational> x, const Rational& beta);
std::vector<double> residuals(const GainSystem& system, std::span<const double> x, double beta);

}  // namespace genpf
