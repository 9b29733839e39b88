#include "genpf/solver.hpp"

#include "genpf/irreducibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace genpf {

std::string to_string(GapMode mode) {
  return mode == GapMode::Practical ? "practical" : "theoretical";
}

void SolverConfig::check() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw std::invalid_argument("tolerance must be positive");
  if (tie_break != "lowest-index") throw std::invalid_argument("unknown tie-break rule: " + tie_break);
}

GapDescriptor theoretical_gap(std::size_t n, const MaxGain& g) {
  if (n == 0) throw std::invalid_argument("theoretical_gap needs n >= 1");
  if (g.value < 1) throw std::invalid_argument("theoretical_gap needs G >= 1");
  GapDescriptor d;
  d.n = n;
  d.max_gain = g.value;
  const Rational base = Rational(static_cast<unsigned long>(n)) * g.value;
  const double cube = 8.0 * static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  d.log2_delta = -cube * std::log2(base.get_d());
  if (d.log2_delta == 0.0) d.log2_delta = 0.0;  // no negative zero
  if (is_integral(base)) {
    const mpz_class num = base.get_num();
    if (mpz_popcount(num.get_mpz_t()) == 1) {
      const auto bits = static_cast<std::int64_t>(mpz_sizeinbase(num.get_mpz_t(), 2) - 1);
      d.exact_log2_delta = -static_cast<std::int64_t>(8 * n * n * n) * bits;
    }
  }
  return d;
}

MaxGain integral_max_gain(const GainSystem& system) {
  Rational best = 0;
  for (std::size_t i = 0; i < system.entities(); ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < system.affectors(); ++j) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), system.supporter_gains()(i, j).get_den_mpz_t());
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), system.repressor_gains()(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < system.affectors(); ++j) {
      best = std::max(best, Rational(system.supporter_gains()(i, j) * scale));
      best = std::max(best, Rational(system.repressor_gains()(i, j) * scale));
    }
  }
  return MaxGain{best};
}

namespace {

/// Gap as an exact dyadic or decimal rational.
Rational search_gap(const GainSystem& system, const SolverConfig& cfg, double tolerance) {
  if (cfg.gap_mode == GapMode::Practical) return rational_from_double(tolerance);
  const GapDescriptor d = theoretical_gap(system.entities(), integral_max_gain(system));
  const auto exponent = static_cast<unsigned long>(std::ceil(-d.log2_delta));
  mpz_class den = 1;
  den <<= exponent;
  return Rational(mpz_class(1), den);
}

constexpr int kMaxScaleSteps = 512;

}  // namespace

BetaBracket binary_search_beta(const GainSystem& system, const SolverConfig& cfg) {
  return binary_search_beta(system, search_gap(system, cfg, cfg.tolerance), cfg.search_mode);
}

BetaBracket binary_search_beta(const GainSystem& system, const Rational& gap, ArithmeticMode mode) {
  if (sgn(gap) <= 0) throw std::invalid_argument("gap must be positive");
  BetaBracket out;
  auto probe = [&](const Rational& beta, std::vector<BracketStep>& log) {
    const FeasibilityVerdict v = feasible(system, beta, mode);
    log.push_back({beta, v.feasible, v.mode});
    return v.feasible;
  };

  Rational beta = 1;
  if (probe(beta, out.trace.doubling)) {
    int steps = 0;
    do {
      out.beta_minus = beta;
      beta *= 2;
      if (++steps > kMaxScaleSteps) throw Error("feasible at every probed beta; the system is not irreducible");
    } while (probe(beta, out.trace.doubling));
    out.beta_plus = beta;
  } else {
    int steps = 0;
    do {
      out.beta_plus = beta;
      beta /= 2;
      if (++steps > kMaxScaleSteps) throw Error("infeasible at every probed beta");
    } while (!probe(beta, out.trace.doubling));
    out.beta_minus = beta;
  }

  while (out.beta_plus - out.beta_minus >= gap) {
    const Rational mid = (out.beta_minus + out.beta_plus) / 2;
    if (probe(mid, out.trace.bisection)) {
      out.beta_minus = mid;
    } else {
      out.beta_plus = mid;
    }
  }
  return out;
}

Selection eliminate_affectors(const GainSystem& system, const Rational& beta_minus, const SolverConfig& cfg,
                              std::vector<EliminationStep>* steps) {
  cfg.check();
  Selection sigma = Selection::empty(system);
  for (std::size_t t = 0; t < system.entities(); ++t) {
    EliminationStep step;
    step.entity = t;
    bool extended = false;
    for (std::size_t a : system.supporters(t)) {
      step.tried.push_back(a);
      Selection candidate = sigma.with(system, t, a);
      const SelectedSystem contracted = apply_selection(system, candidate);
      if (feasible(contracted.system, beta_minus, cfg.search_mode).feasible) {
        sigma = std::move(candidate);
        step.chosen = a;
        extended = true;
        break;
      }
    }
    if (steps) steps->push_back(step);
    if (!extended) {
      throw EliminationFailed("no supporter of entity " + std::to_string(t) + " keeps the system feasible at beta " +
                                  to_string(beta_minus),
                              t);
    }
  }
  return sigma;
}

Verification verify_solution(const GainSystem& system, double beta_star, const std::vector<double>& x,
                             double epsilon, ArithmeticMode bracket_mode) {
  if (x.size() != system.affectors()) throw std::invalid_argument("solution length does not match the instance");
  if (!(beta_star > 0.0) || !std::isfinite(beta_star)) throw std::invalid_argument("beta* must be positive");
  Verification v;
  v.epsilon = epsilon;
  v.bracket_mode = bracket_mode;

  const bool nonnegative = std::all_of(x.begin(), x.end(), [](double xi) { return xi >= 0.0 && std::isfinite(xi); });
  const Totals<double> t = totals(system, x);
  double support_norm = 0.0;
  for (std::size_t i = 0; i < system.entities(); ++i) {
    support_norm = std::max(support_norm, std::abs(t.support[i]));
    v.max_residual = std::max(v.max_residual, std::abs(t.repression[i] - t.support[i] / beta_star));
  }
  v.residual_bound = 1e-8 * std::max(1.0, support_norm);
  v.residuals_ok = nonnegative && v.max_residual <= v.residual_bound;

  std::size_t nonzeros = 0;
  for (double xi : x) nonzeros += xi > 0.0 ? 1 : 0;
  bool one_each = nonnegative && nonzeros == system.entities();
  for (std::size_t i = 0; i < system.entities() && one_each; ++i) {
    const IndexSet& s = system.supporters(i);
    const auto active = std::count_if(s.begin(), s.end(), [&](std::size_t j) { return x[j] > 0.0; });
    one_each = active == 1;
  }
  v.zero_star_ok = one_each;

  const Rational beta = rational_from_double_exact(beta_star);
  const Rational eps = rational_from_double(epsilon);
  v.above_infeasible = !feasible(system, Rational(beta * (1 + eps)), bracket_mode).feasible;
  v.below_feasible = feasible(system, Rational(beta * (1 - eps)), bracket_mode).feasible;
  v.within_max_gain = rational_from_double_exact(beta_star) <= max_gain(system).value;
  return v;
}

namespace {

/// One attempt at a fixed gap on a system without redundant affectors.
PfSolution attempt(const GainSystem& system, const SolverConfig& cfg, double tolerance) {
  PfSolution sol;
  const Rational gap = search_gap(system, cfg, tolerance);
  sol.tolerance = gap;
  BetaBracket bracket = binary_search_beta(system, gap, cfg.search_mode);
  sol.beta_minus = bracket.beta_minus;
  sol.beta_plus = bracket.beta_plus;
  sol.trace = std::move(bracket.trace);

  const Selection sigma = eliminate_affectors(system, sol.beta_minus, cfg, &sol.trace.elimination);
  sol.selection = sigma.affectors();

  const SelectedSystem square = apply_selection(system, sigma);
  const Matrix<Rational> z = z_matrix(square.system);
  const Matrix<double> zf = z.map<double>([](const Rational& q) { return q.get_d(); });
  SquarePfResult pf;
  try {
    pf = pf_root_vector(zf);
  } catch (const PfNotConverged& e) {
    pf = e.best();
  }
  sol.pf_iterations = pf.iterations;
  sol.root = pf.root;

  if (z.rows() <= kExactDegreeLimit) {
    const Rational precision(mpz_class(1), mpz_class(1) << 96);
    ExactRoot er = char_poly_root_exact(z, precision);
    ExactBeta eb;
    eb.characteristic = std::move(er.characteristic);
    eb.root = er.root;
    eb.beta_lower = 1 / er.root.upper;
    eb.beta_upper = sgn(er.root.lower) > 0 ? Rational(1 / er.root.lower) : Rational(0);
    // The isolating interval is far narrower than a double ulp.
    sol.root = er.root.midpoint();
    sol.verification.exact_agrees = er.root.contains(pf.root, 1e-9 * std::max(1.0, pf.root));
    sol.exact = std::move(eb);
  }
  sol.beta_star = 1.0 / sol.root;

  sol.x = natural_extension<double>(pf.vector, sigma, system.affectors());
  sol.residuals = residuals(system, sol.x, sol.beta_star);

  const bool agrees = sol.verification.exact_agrees;
  const double eps = 10.0 * std::max(tolerance, cfg.gap_mode == GapMode::Practical ? 0.0 : kDefaultSolverTolerance);
  sol.verification = verify_solution(system, sol.beta_star, sol.x, eps,
                                     cfg.exact_verification ? ArithmeticMode::Exact : ArithmeticMode::Auto);
  sol.verification.exact_agrees = agrees;
  return sol;
}

std::vector<std::size_t> kept_affectors(std::size_t m, const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < m; ++j) {
    if (!std::binary_search(removed.begin(), removed.end(), j)) kept.push_back(j);
  }
  return kept;
}

void expand(PfSolution& sol, const GainSystem& original, const std::vector<std::size_t>& kept,
            std::vector<std::size_t> removed) {
  sol.x = natural_extension<double>(sol.x, kept, original.affectors());
  for (std::size_t& a : sol.selection) a = kept[a];
  for (EliminationStep& step : sol.trace.elimination) {
    for (std::size_t& a : step.tried) a = kept[a];
    step.chosen = kept[step.chosen];
  }
  sol.removed_affectors = std::move(removed);
}

}  // namespace

PfSolution solve(const GainSystem& system, const SolverConfig& cfg) {
  cfg.check();
  if (auto violations = validate(system); !violations.empty()) {
    throw std::invalid_argument("invalid system: " + violations.front());
  }
  auto [reduced, removed] = remove_redundant_affectors(system);
  std::sort(removed.begin(), removed.end());
  const std::vector<std::size_t> kept = kept_affectors(system.affectors(), removed);

  const IrreducibilityReport irreducibility = test_irreducible(reduced);
  if (!irreducibility.irreducible) {
    std::string message = "reducible system";
    if (irreducibility.witness) message += ": " + irreducibility.witness->message;
    throw ReducibleSystem(message);
  }

  const GapDescriptor theory = theoretical_gap(reduced.entities(), integral_max_gain(reduced));

  double tolerance = cfg.tolerance;
  std::optional<PfSolution> best;
  std::string last_failure;
  const std::size_t attempts = cfg.gap_mode == GapMode::Theoretical ? 1 : cfg.max_retries + 1;
  for (std::size_t round = 0; round < attempts; ++round, tolerance /= 2) {
    PfSolution sol;
    try {
      sol = attempt(reduced, cfg, tolerance);
    } catch (const EliminationFailed& e) {
      last_failure = e.what();
      continue;
    }
    sol.retries = round;
    sol.gap.log2_theoretical = theory.log2_delta;
    sol.gap.exact_log2_theoretical = theory.exact_log2_delta;
    sol.gap.log2_tolerance = std::log2(sol.tolerance.get_d());
    if (sol.tolerance.get_d() == 0.0) {
      sol.gap.log2_tolerance = static_cast<double>(mpz_sizeinbase(sol.tolerance.get_num_mpz_t(), 2)) -
                               static_cast<double>(mpz_sizeinbase(sol.tolerance.get_den_mpz_t(), 2));
    }
    sol.gap.meets_theoretical = sol.gap.log2_tolerance <= theory.log2_delta;
    expand(sol, system, kept, removed);
    if (sol.verification.passed()) return sol;
    last_failure = "verification failed";
    best = std::move(sol);
  }
  if (best) throw VerificationFailed("verification failed after retries", std::move(*best));
  throw Error("affector elimination failed after retries: " + last_failure);
}

}  // namespace genpf
