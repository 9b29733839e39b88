#include "helpers.hpp"

#include "../support/oracles.hpp"

#include "genpf/feasibility.hpp"
#include "genpf/generators.hpp"
#include "genpf/simplex.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace genpf;
using testing::q;
using testing::frac;
using testing::r;

TEST_CASE("simplex on a textbook problem") {
  // min -x - y  s.t.  x + 2y + s1 = 4, 3x + y + s2 = 6
  Matrix<Rational> a = q({{"1", "2", "1", "0"}, {"3", "1", "0", "1"}});
  Simplex<Rational> lp(a, {4, 6}, {-1, -1, 0, 0});
  const LpResult<Rational> res = lp.solve();
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.objective == Rational(-14, 5));
  CHECK(res.x[0] == Rational(8, 5));
  CHECK(res.x[1] == Rational(6, 5));

  Simplex<double> lpf(a.map<double>([](const Rational& v) { return v.get_d(); }), {4.0, 6.0}, {-1.0, -1.0, 0.0, 0.0});
  CHECK(lpf.solve().objective == doctest::Approx(-2.8));
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  // x + y = 1 and x + y = 2
  Simplex<Rational> infeasible(q({{"1", "1"}, {"1", "1"}}), {1, 2}, {0, 0});
  CHECK(infeasible.solve().status == LpStatus::Infeasible);
  // min -x s.t. x - y = 0
  Simplex<Rational> unbounded(q({{"1", "-1"}}), {0}, {-1, 0});
  CHECK(unbounded.solve().status == LpStatus::Unbounded);
  // Redundant equality rows are retired after phase one.
  Simplex<Rational> redundant(q({{"1", "1"}, {"2", "2"}}), {1, 2}, {1, 0});
  const auto res = redundant.solve();
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.objective == 0);
  CHECK_THROWS_AS(Simplex<Rational>(q({{"1"}}), {-1}, {0}), std::invalid_argument);
}

TEST_CASE("feasibility of the non-convexity fixture") {
  const GainSystem b = fixtures::sys_b();
  const FeasibilityVerdict at1 = feasible(b, 1);
  CHECK(at1.feasible);
  double mass = 0.0;
  for (double v : at1.witness) mass += v;
  CHECK(mass == doctest::Approx(1.0));
  for (double v : residuals(b, at1.witness, 1.0)) CHECK(v >= -1e-9);

  CHECK(feasible(b, r("1.41421356")).feasible);
  const FeasibilityVerdict above = feasible(b, r("3/2"));
  CHECK_FALSE(above.feasible);
  CHECK(above.max_violation > 0.0);

  for (ArithmeticMode mode : {ArithmeticMode::Float, ArithmeticMode::Exact, ArithmeticMode::Auto}) {
    CHECK(feasible(b, 1, mode).feasible);
    CHECK_FALSE(feasible(b, r("3/2"), mode).feasible);
  }
  const FeasibilityVerdict exact = feasible(b, 1, ArithmeticMode::Exact);
  REQUIRE(exact.exact_witness);
  CHECK(exact.mode == ArithmeticMode::Exact);
  Rational total = 0;
  for (const Rational& v : *exact.exact_witness) total += v;
  CHECK(total == 1);
  for (const Rational& v : residuals(b, *exact.exact_witness, Rational(1))) CHECK(sgn(v) >= 0);
}

TEST_CASE("feasibility argument checks") {
  CHECK_THROWS_AS(feasible(fixtures::sys_b(), 0), std::invalid_argument);
  CHECK_THROWS_AS(feasible(fixtures::sys_b(), -1), std::invalid_argument);
  const GainSystem bad(q({{"1", "0"}}), q({{"1", "1"}}));
  CHECK_THROWS_AS(feasible(bad, 1), std::invalid_argument);
}

TEST_CASE("residual examples") {
  const GainSystem b = fixtures::sys_b();
  const std::vector<Rational> y1{2, Rational(1, 2), 0};
  CHECK(residuals(b, y1, Rational(1)) == std::vector<Rational>{0, 0});
  const std::vector<Rational> zero(3, Rational(0));
  CHECK(residuals(b, zero, Rational(3)) == std::vector<Rational>{0, 0});
  // Y1 is tight at beta = 1, so any larger beta (here G = 4) breaks it.
  const auto at_g = residuals(b, y1, Rational(4));
  CHECK(std::any_of(at_g.begin(), at_g.end(), [](const Rational& v) { return sgn(v) < 0; }));
  CHECK_THROWS_AS(residuals(b, y1, Rational(0)), std::invalid_argument);
}

TEST_CASE("the oracle's optimum matches vertex enumeration exactly") {
  std::mt19937_64 rng(404);
  RandomInstanceSpec spec;
  spec.max_affectors = 7;
  for (int trial = 0; trial < 60; ++trial) {
    const GainSystem s = random_irreducible_instance(1000 + trial, spec).system;
    const Rational canonical = frac(1 + static_cast<long>(rng() % 40), 1 + static_cast<long>(rng() % 16));
    const Rational t = oracle::min_max_violation(s, canonical);
    const FeasibilityVerdict v = feasible(s, canonical, ArithmeticMode::Exact);
    CAPTURE(trial);
    CHECK(v.feasible == (sgn(t) <= 0));
    if (!v.feasible) CHECK(v.max_violation == doctest::Approx(Rational(t / canonical).get_d()).epsilon(1e-12));
    CHECK(feasible(s, canonical, ArithmeticMode::Auto).feasible == v.feasible);
  }
}

TEST_CASE("verdicts are a threshold function of beta") {
  RandomInstanceSpec spec;
  for (int trial = 0; trial < 25; ++trial) {
    const GainSystem s = random_irreducible_instance(500 + trial, spec).system;
    bool seen_infeasible = false;
    for (int k = 1; k <= 80; ++k) {
      const Rational beta = frac(k, 8);
      const bool f = feasible(s, beta).feasible;
      if (seen_infeasible) CHECK_FALSE(f);
      seen_infeasible = seen_infeasible || !f;
    }
    CHECK(seen_infeasible);
  }
}

TEST_CASE("column scaling rescales witnesses but not verdicts") {
  std::mt19937_64 rng(12);
  RandomInstanceSpec spec;
  for (int trial = 0; trial < 20; ++trial) {
    const GainSystem s = random_irreducible_instance(700 + trial, spec).system;
    const std::size_t col = rng() % s.affectors();
    const Rational c = frac(2 + static_cast<long>(rng() % 5), 3);
    Matrix<Rational> sm = s.supporter_gains(), rm = s.repressor_gains();
    for (std::size_t i = 0; i < s.entities(); ++i) {
      sm(i, col) *= c;
      rm(i, col) *= c;
    }
    const GainSystem scaled(sm, rm);
    for (int k = 1; k <= 24; ++k) {
      const Rational beta = frac(k, 4);
      const FeasibilityVerdict plain = feasible(s, beta, ArithmeticMode::Exact);
      CHECK(plain.feasible == feasible(scaled, beta, ArithmeticMode::Exact).feasible);
      if (plain.feasible) {
        // x with column `col` divided by c is a witness for the scaled system.
        std::vector<Rational> x = *plain.exact_witness;
        x[col] /= c;
        for (const Rational& v : residuals(scaled, x, beta)) CHECK(sgn(v) >= 0);
      }
    }
  }
}
