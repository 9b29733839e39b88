#include "helpers.hpp"

#include "../support/oracles.hpp"

#include "genpf/error.hpp"
#include "genpf/generators.hpp"
#include "genpf/oracle.hpp"
#include "genpf/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace genpf;
using testing::frac;
using testing::q;
using testing::r;

namespace {

SolverConfig with_tolerance(double tol) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  return cfg;
}

}  // namespace

TEST_CASE("bracketing beta*") {
  const BetaBracket a = binary_search_beta(fixtures::sys_a(), with_tolerance(1e-9));
  CHECK(a.beta_minus.get_d() >= 0.5 - 1e-9);
  CHECK(a.beta_minus.get_d() <= 0.5);
  CHECK(a.beta_plus - a.beta_minus < r("1e-9"));

  const BetaBracket b = binary_search_beta(fixtures::sys_b(), with_tolerance(1e-9));
  CHECK(std::abs(b.beta_minus.get_d() - std::sqrt(2.0)) <= 1e-9);
  CHECK(b.beta_minus.get_d() <= std::sqrt(2.0));
  CHECK(b.beta_plus.get_d() > std::sqrt(2.0));
  CHECK(b.trace.doubling.size() == 2);  // 1 feasible, 2 infeasible

  const BetaBracket c = binary_search_beta(fixtures::sys_c(), with_tolerance(1e-9));
  CHECK(std::abs(c.beta_minus.get_d() - 1 / std::sqrt(2.0)) <= 1e-9);
  CHECK(c.trace.doubling.front().feasible == false);  // halving branch
}

TEST_CASE("affector elimination") {
  const SolverConfig cfg;
  const Selection a = eliminate_affectors(fixtures::sys_a(), Rational(1, 2) - r("1e-12"), cfg);
  CHECK(a.affectors() == std::vector<std::size_t>{0, 2});

  const Rational below_sqrt2 = rational_from_double(std::sqrt(2.0)) - r("1e-12");
  std::vector<EliminationStep> steps;
  const Selection b = eliminate_affectors(fixtures::sys_b(), below_sqrt2, cfg, &steps);
  CHECK(b.affectors() == std::vector<std::size_t>{0, 2});
  REQUIRE(steps.size() == 2);
  CHECK(steps[1].tried == std::vector<std::size_t>{1, 2});

  const Selection c = eliminate_affectors(fixtures::sys_c(), r("1/2"), cfg);
  CHECK(c.affectors() == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(eliminate_affectors(fixtures::sys_b(), r("3/2"), cfg), EliminationFailed);
}

TEST_CASE("solve the fixtures") {
  const PfSolution a = solve(fixtures::sys_a());
  CHECK(a.beta_star == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(a.selection == std::vector<std::size_t>{0, 2});
  CHECK(a.x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(a.x[1] == 0.0);
  CHECK(a.x[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(a.x[3] == 0.0);
  for (double v : a.residuals) CHECK(std::abs(v) <= 1e-10);
  CHECK(a.verification.passed());
  REQUIRE(a.exact);
  CHECK(a.exact->characteristic.coefficients == std::vector<Rational>{1, 0, -4});

  const PfSolution b = solve(fixtures::sys_b());
  CHECK(std::abs(b.beta_star - std::sqrt(2.0)) <= 1e-12);
  CHECK(b.x[0] == doctest::Approx(0.7388).epsilon(1e-4));
  CHECK(b.x[1] == 0.0);
  CHECK(b.x[2] == doctest::Approx(0.2612).epsilon(1e-4));
  // Equality system: x3 = x1 / (2 sqrt 2).
  CHECK(b.x[2] == doctest::Approx(b.x[0] / (2 * std::sqrt(2.0))).epsilon(1e-12));

  const PfSolution c = solve(fixtures::sys_c());
  CHECK(std::abs(c.beta_star - 1 / std::sqrt(2.0)) <= 1e-12);
  CHECK(c.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.x[0] / c.x[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("reducible systems are rejected") {
  CHECK_THROWS_AS(solve(fixtures::sys_d()), ReducibleSystem);
  SolverConfig bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(solve(fixtures::sys_a(), bad), std::invalid_argument);
  bad = SolverConfig{};
  bad.tie_break = "random";
  CHECK_THROWS_AS(solve(fixtures::sys_a(), bad), std::invalid_argument);
}

TEST_CASE("redundant affectors are stripped and restored") {
  // SYS-B with an extra affector that only represses.
  const GainSystem padded(q({{"1/2", "0", "0", "0"}, {"0", "0", "4", "4"}}), q({{"0", "3", "2", "1"}, {"1", "5", "0", "0"}}));
  const PfSolution sol = solve(padded);
  CHECK(sol.removed_affectors == std::vector<std::size_t>{1});
  CHECK(std::abs(sol.beta_star - std::sqrt(2.0)) <= 1e-12);
  CHECK(sol.selection == std::vector<std::size_t>{0, 3});
  CHECK(sol.x.size() == 4);
  CHECK(sol.x[1] == 0.0);
  CHECK(verify_solution(padded, sol.beta_star, sol.x, 1e-11).passed());
}

TEST_CASE("theoretical gap") {
  const GapDescriptor g24 = theoretical_gap(2, MaxGain{4});
  CHECK(g24.log2_delta == -192.0);
  REQUIRE(g24.exact_log2_delta);
  CHECK(*g24.exact_log2_delta == -192);
  const GapDescriptor g11 = theoretical_gap(1, MaxGain{1});
  CHECK(g11.log2_delta == 0.0);
  CHECK(*g11.exact_log2_delta == 0);
  const GapDescriptor g39 = theoretical_gap(3, MaxGain{9});
  CHECK(g39.log2_delta == doctest::Approx(-216.0 * std::log2(27.0)).epsilon(1e-14));
  CHECK(std::abs(g39.log2_delta - (-1027.4)) < 0.5);
  CHECK_FALSE(g39.exact_log2_delta);
  CHECK_THROWS_AS(theoretical_gap(0, MaxGain{4}), std::invalid_argument);
  CHECK_THROWS_AS(theoretical_gap(2, MaxGain{Rational(1, 2)}), std::invalid_argument);
  CHECK(integral_max_gain(fixtures::sys_b()).value == 4);
  CHECK(integral_max_gain(fixtures::sys_a()).value == 4);
}

TEST_CASE("practical tolerance is flagged against the theoretical gap") {
  const PfSolution sol = solve(fixtures::sys_c());
  CHECK(sol.gap.log2_theoretical == doctest::Approx(-64.0 * std::log2(4.0)));
  CHECK_FALSE(sol.gap.meets_theoretical);
  SolverConfig fine;
  fine.gap_mode = GapMode::Theoretical;
  const PfSolution exact = solve(fixtures::sys_c(), fine);
  CHECK(exact.gap.meets_theoretical);
  CHECK(std::abs(exact.beta_star - 1 / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("the geometric mean of two feasible points can be infeasible") {
  // Extended vectors (x, beta): Y1 = (2, 1/2, 0, 1), Y2 = (4, 0, sqrt 2, sqrt 2).
  const GainSystem b = fixtures::sys_b();
  const std::vector<double> y1{2.0, 0.5, 0.0};
  const std::vector<double> y2{4.0, 0.0, std::sqrt(2.0)};
  for (double v : residuals(b, y1, 1.0)) CHECK(v >= -1e-12);
  for (double v : residuals(b, y2, std::sqrt(2.0))) CHECK(v >= -1e-12);
  std::vector<double> mean(3);
  for (std::size_t k = 0; k < 3; ++k) mean[k] = std::sqrt(y1[k] * y2[k]);
  const double beta = std::sqrt(1.0 * std::sqrt(2.0));
  const auto res = residuals(b, mean, beta);
  CHECK(mean == std::vector<double>{std::sqrt(8.0), 0.0, 0.0});
  CHECK(res[1] < -1.0);
}

TEST_CASE("solutions satisfy the structural invariants on random instances") {
  RandomInstanceSpec spec;
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const GainSystem s = random_irreducible_instance(9000 + trial, spec).system;
    const PfSolution sol = solve(s);
    CAPTURE(trial);
    CHECK(sol.verification.passed());
    CHECK(sol.root > 0.0);
    CHECK(sol.beta_star <= max_gain(s).value.get_d());
    std::size_t nonzero = 0;
    for (double v : sol.x) {
      CHECK(v >= 0.0);
      nonzero += v > 0.0;
    }
    CHECK(nonzero == s.entities());
    for (int sample = 0; sample < 10; ++sample) {
      const auto sel = nth_selection(s, rng() % selection_count(s));
      CHECK(sol.beta_star >= (1.0 / oracle::spectral_radius(oracle::selection_z(s, sel))) * (1 - 1e-9));
    }
    CHECK(sol.beta_star == doctest::Approx(oracle::beta_star_by_selection(s)).epsilon(1e-9));
  }
}

TEST_CASE("beta* is invariant under scaling an entity's row") {
  RandomInstanceSpec spec;
  for (int trial = 0; trial < 10; ++trial) {
    const GainSystem s = random_irreducible_instance(300 + trial, spec).system;
    Matrix<Rational> sm = s.supporter_gains(), rm = s.repressor_gains();
    for (std::size_t j = 0; j < s.affectors(); ++j) {
      sm(0, j) *= frac(3, 7);
      rm(0, j) *= frac(3, 7);
    }
    CHECK(solve(GainSystem(sm, rm)).beta_star == doctest::Approx(solve(s).beta_star).epsilon(1e-12));
  }
}

TEST_CASE("solve is deterministic") {
  const GainSystem s = random_irreducible_instance(42).system;
  const PfSolution one = solve(s);
  const PfSolution two = solve(s);
  CHECK(one.beta_star == two.beta_star);
  CHECK(one.x == two.x);
  CHECK(one.selection == two.selection);
  CHECK(one.trace.bisection.size() == two.trace.bisection.size());
}

TEST_CASE("verify_solution rejects broken candidates") {
  const GainSystem a = fixtures::sys_a();
  const PfSolution sol = solve(a);
  CHECK(verify_solution(a, sol.beta_star, sol.x, 1e-11).passed());
  // Wrong beta: the bracket check fails.
  CHECK_FALSE(verify_solution(a, 0.49, sol.x, 1e-11).passed());
  // Two active supporters for entity 0.
  std::vector<double> weak = sol.x;
  weak[1] = weak[0] / 2;
  weak[0] /= 2;
  const Verification w = verify_solution(a, sol.beta_star, weak, 1e-11);
  CHECK_FALSE(w.zero_star_ok);
  CHECK(w.residuals_ok);
  CHECK_THROWS_AS(verify_solution(a, 0.5, {1.0}, 1e-11), std::invalid_argument);
}
