#include "helpers.hpp"

#include "../support/oracles.hpp"

#include "genpf/error.hpp"
#include "genpf/generators.hpp"
#include "genpf/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace genpf;

TEST_CASE("all four selections of the bounded-power system are optimal") {
  const OracleResult a = enumerate_solve(fixtures::sys_a());
  CHECK(a.enumerated == 4);
  CHECK(a.best_root == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.best_beta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a.optimal.size() == 4);
}

TEST_CASE("per-selection roots of the non-convexity system") {
  const OracleResult b = enumerate_solve(fixtures::sys_b());
  REQUIRE(b.table.size() == 2);
  CHECK(b.table[0].selection == std::vector<std::size_t>{0, 1});
  CHECK(b.table[0].root == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.table[1].selection == std::vector<std::size_t>{0, 2});
  CHECK(b.table[1].root == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(b.optimal == std::vector<std::size_t>{1});
  CHECK(std::abs(b.best_beta - std::sqrt(2.0)) <= 1e-15);
  CHECK(b.is_optimal({0, 2}));
  CHECK_FALSE(b.is_optimal({0, 1}));
}

TEST_CASE("square systems have a single table entry") {
  const OracleResult c = enumerate_solve(fixtures::sys_c());
  CHECK(c.table.size() == 1);
  CHECK(c.optimal.size() == 1);
}

TEST_CASE("oracle errors") {
  CHECK_THROWS_AS(enumerate_solve(fixtures::sys_a(), 3), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_solve(fixtures::sys_d()), Error);
}

TEST_CASE("oracle agrees with an independent eigensolver and ignores thread count") {
  RandomInstanceSpec spec;
  for (int trial = 0; trial < 30; ++trial) {
    const GainSystem s = random_irreducible_instance(4000 + trial, spec).system;
    const OracleResult one = enumerate_solve(s, kDefaultSelectionBudget, 1);
    const OracleResult many = enumerate_solve(s, kDefaultSelectionBudget, 4);
    CHECK(one.best_beta == many.best_beta);
    CHECK(one.optimal == many.optimal);
    CHECK(one.enumerated == selection_count(s));
    CHECK(one.best_beta == doctest::Approx(oracle::beta_star_by_selection(s)).epsilon(1e-10));
    for (const SelectionRoot& row : one.table) CHECK(one.best_root <= row.root);
  }
}

TEST_CASE("uniform gain scaling leaves every selection's root unchanged") {
  RandomInstanceSpec spec;
  for (int trial = 0; trial < 10; ++trial) {
    const GainSystem s = random_irreducible_instance(6000 + trial, spec).system;
    Matrix<Rational> sm = s.supporter_gains(), rm = s.repressor_gains();
    for (std::size_t i = 0; i < s.entities(); ++i)
      for (std::size_t j = 0; j < s.affectors(); ++j) {
        sm(i, j) *= testing::frac(1, 16);
        rm(i, j) *= testing::frac(1, 16);
      }
    const OracleResult plain = enumerate_solve(s);
    const OracleResult scaled = enumerate_solve(GainSystem(sm, rm));
    REQUIRE(plain.table.size() == scaled.table.size());
    for (std::size_t k = 0; k < plain.table.size(); ++k) CHECK(plain.table[k].root == scaled.table[k].root);
  }
}
