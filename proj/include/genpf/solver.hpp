#pragma once

#include "genpf/error.hpp"
#include "genpf/feasibility.hpp"
#include "genpf/rational.hpp"
#include "genpf/spectral.hpp"
#include "genpf/system.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace genpf {

enum class GapMode {
  /// Bisect until the bracket is narrower than the practical tolerance.
  Practical,
  /// Bisect down to the theoretical separation (nG)^(-8 n^3). Exact but slow.
  Theoretical,
};

std::string to_string(GapMode mode);

inline constexpr double kDefaultSolverTolerance = 1e-12;

struct SolverConfig {
  GapMode gap_mode = GapMode::Practical;
  /// Absolute bracket width for the bisection (practical mode).
  double tolerance = kDefaultSolverTolerance;
  /// Refinement rounds after the first attempt; tolerance halves each time.
  std::size_t max_retries = 8;
  /// Decide the verification bracket with exact pivoting.
  bool exact_verification = true;
  /// Oracle arithmetic during the search itself.
  ArithmeticMode search_mode = ArithmeticMode::Auto;
  /// Only "lowest-index" is implemented.
  std::string tie_break = "lowest-index";

  /// Throws std::invalid_argument when a field is out of range.
  void check() const;
};

/// log2 of the theoretical bisection gap, -8 n^3 log2(nG).
struct GapDescriptor {
  std::size_t n = 0;
  Rational max_gain;
  double log2_delta = 0.0;
  /// Set when nG is a power of two, so the exponent is an integer.
  std::optional<std::int64_t> exact_log2_delta;
};

/// Requires n >= 1 and G >= 1.
GapDescriptor theoretical_gap(std::size_t n, const MaxGain& g);

/// G after scaling each entity's row to integers (which leaves beta*
/// unchanged). Equals max_gain for integral systems.
MaxGain integral_max_gain(const GainSystem& system);

struct BracketStep {
  Rational beta;
  bool feasible = false;
  ArithmeticMode mode = ArithmeticMode::Float;
};

struct EliminationStep {
  std::size_t entity = 0;
  /// Supporters tried in order; the last one is the choice.
  std::vector<std::size_t> tried;
  std::size_t chosen = 0;
};

struct SearchTrace {
  std::vector<BracketStep> doubling;
  std::vector<BracketStep> bisection;
  std::vector<EliminationStep> elimination;
};

struct BetaBracket {
  /// f(beta_minus) feasible, f(beta_plus) infeasible.
  Rational beta_minus;
  Rational beta_plus;
  SearchTrace trace;
};

/// Doubling from beta = 1 (halving if 1 is already infeasible), then
/// bisection until beta_plus - beta_minus < gap. Works on the system as
/// given; no irreducibility check.
BetaBracket binary_search_beta(const GainSystem& system, const SolverConfig& cfg);
BetaBracket binary_search_beta(const GainSystem& system, const Rational& gap, ArithmeticMode mode);

class EliminationFailed : public Error {
 public:
  EliminationFailed(std::string what, std::size_t entity) : Error(std::move(what)), entity_(entity) {}
  std::size_t entity() const { return entity_; }

 private:
  std::size_t entity_;
};

/// For t = 0..n-1 picks the lowest-index supporter of entity t that keeps the
/// contracted system feasible at beta_minus. Throws EliminationFailed when
/// no supporter does (beta_minus is too far below beta*).
Selection eliminate_affectors(const GainSystem& system, const Rational& beta_minus, const SolverConfig& cfg,
                              std::vector<EliminationStep>* steps = nullptr);

/// Exact description of beta* via the characteristic polynomial of Z.
struct ExactBeta {
  Polynomial characteristic;
  /// lower < root <= upper
  RootInterval root;
  /// 1/upper <= beta* < 1/lower
  Rational beta_lower;
  Rational beta_upper;
};

struct Verification {
  double max_residual = 0.0;
  double residual_bound = 0.0;
  bool residuals_ok = false;
  bool above_infeasible = false;
  bool below_feasible = false;
  bool zero_star_ok = false;
  /// Float root inside the exact isolating interval (true when no exact path).
  bool exact_agrees = true;
  /// Informational: beta* <= G, guaranteed for integral gains.
  bool within_max_gain = true;
  double epsilon = 0.0;
  ArithmeticMode bracket_mode = ArithmeticMode::Exact;

  bool passed() const { return residuals_ok && above_infeasible && below_feasible && zero_star_ok && exact_agrees; }
};

struct GapReport {
  double log2_theoretical = 0.0;
  std::optional<std::int64_t> exact_log2_theoretical;
  double log2_tolerance = 0.0;
  /// The final tolerance is at least as fine as the theoretical gap.
  bool meets_theoretical = false;
};

struct PfSolution {
  double beta_star = 0.0;
  /// r = 1 / beta*
  double root = 0.0;
  std::optional<ExactBeta> exact;
  Rational beta_minus;
  Rational beta_plus;
  /// Length m, one positive entry per entity (the chosen supporter), L1 = 1.
  std::vector<double> x;
  /// Chosen supporter per entity, in the caller's affector indexing.
  std::vector<std::size_t> selection;
  /// R_i(x, beta*)
  std::vector<double> residuals;
  std::size_t retries = 0;
  Rational tolerance;
  Verification verification;
  GapReport gap;
  SearchTrace trace;
  /// Affectors with no supporter gain, dropped before solving.
  std::vector<std::size_t> removed_affectors;
  std::size_t pf_iterations = 0;
};

class VerificationFailed : public Error {
 public:
  VerificationFailed(std::string what, PfSolution best) : Error(std::move(what)), best_(std::move(best)) {}
  const PfSolution& best() const { return best_; }

 private:
  PfSolution best_;
};

/// Full pipeline: strip redundant affectors, check irreducibility, bracket
/// beta*, eliminate down to a square system, take its Perron root and vector,
/// verify, and refine on failure. Throws ReducibleSystem, VerificationFailed.
PfSolution solve(const GainSystem& system, const SolverConfig& cfg = {});

/// Checks a candidate against an instance: residuals, one active supporter
/// per entity, and the feasibility bracket beta*(1 +- epsilon).
Verification verify_solution(const GainSystem& system, double beta_star, const std::vector<double>& x,
                             double epsilon, ArithmeticMode bracket_mode = ArithmeticMode::Exact);

}  // namespace genpf
