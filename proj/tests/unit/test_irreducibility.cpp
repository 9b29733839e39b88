#include "helpers.hpp"

#include "../support/oracles.hpp"

#include "genpf/constraint_graph.hpp"
#include "genpf/error.hpp"
#include "genpf/irreducibility.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace genpf;
using testing::q;

namespace {

ConstraintGraph graph_of(std::vector<IndexSet> succ) { return ConstraintGraph(std::move(succ)); }

/// Disjoint supporter blocks, random repressors; often reducible.
GainSystem random_block_system(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::size_t> sizes(n);
  std::size_t m = 0;
  for (auto& k : sizes) m += (k = 1 + rng() % 3);
  Matrix<Rational> s(n, m), r(n, m);
  std::size_t col = 0;
  std::vector<std::size_t> owner(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < sizes[i]; ++k) owner[col++] = i;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (owner[j] == i) s(i, j) = 1 + static_cast<long>(rng() % 9);
      else if (unit(rng) < density) r(i, j) = 1 + static_cast<long>(rng() % 9);
    }
  return GainSystem(std::move(s), std::move(r));
}

}  // namespace

TEST_CASE("constraint graph edges") {
  const ConstraintGraph a = build_constraint_graph(fixtures::sys_a());
  CHECK(a.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  const ConstraintGraph c = build_constraint_graph(fixtures::sys_c());
  CHECK(c.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  const GainSystem single(q({{"1"}}), q({{"0"}}));
  CHECK(build_constraint_graph(single).edge_count() == 0);
}

TEST_CASE("square constraint graph is the transpose of the repressor pattern") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    Matrix<Rational> s = Matrix<Rational>::identity(n);
    Matrix<Rational> r(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rng() % 2) r(i, j) = 1 + static_cast<long>(rng() % 5);
    const ConstraintGraph g = build_constraint_graph(GainSystem(s, r));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(g.has_edge(i, j) == (r(j, i) != 0));
  }
}

TEST_CASE("strongly connected components") {
  CHECK(scc(graph_of({{1}, {0}})).count == 1);
  CHECK(scc(graph_of({{1}, {}})).count == 2);
  const SccPartition p = scc(graph_of({{1}, {0}, {3}, {2, 4}, {}}));
  CHECK(p.count == 3);
  CHECK(p.component == std::vector<std::size_t>{0, 0, 1, 1, 2});
  CHECK(p.condensation_edges == std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}});
  CHECK(p.members() == std::vector<IndexSet>{{0, 1}, {2, 3}, {4}});

  const GainSystem d = fixtures::sys_d();
  const ConstraintGraph g = selection_constraint_graph(d, Selection::complete(d, {1, 2}));
  CHECK(scc(g).count == 2);
}

TEST_CASE("scc agrees with pairwise reachability") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    ConstraintGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rng() % 4 == 0) g.add_edge(i, j);
    // Reachability by repeated squaring of the adjacency relation.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      reach[i][i] = true;
      for (std::size_t j : g.successors(i)) reach[i][j] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) reach[i][j] = reach[i][j] || (reach[i][k] && reach[k][j]);
    const SccPartition p = scc(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK((p.component[i] == p.component[j]) == (reach[i][j] && reach[j][i]));
  }
}

TEST_CASE("bfs layers") {
  CHECK(bfs_layers(graph_of({{1}, {0}}), 0).layers == std::vector<IndexSet>{{0}, {1}});
  CHECK(bfs_layers(graph_of({{}}), 0).layers == std::vector<IndexSet>{{0}});
  // 3-cycle 0 -> 1 -> 2 -> 0 rooted at 1.
  const BfsLayers l = bfs_layers(graph_of({{1}, {2}, {0}}), 1);
  CHECK(l.layers == std::vector<IndexSet>{{1}, {2}, {0}});
  CHECK(l.unreachable.empty());
  CHECK(bfs_layers(graph_of({{1}, {}, {}}), 0).unreachable == IndexSet{2});
  CHECK_THROWS_AS(bfs_layers(graph_of({{}}), 3), std::invalid_argument);
}

TEST_CASE("robust strong connectivity") {
  CHECK(is_robustly_strongly_connected(fixtures::sys_a(), 100));
  CHECK_FALSE(is_robustly_strongly_connected(fixtures::sys_d(), 100));
  CHECK(is_robustly_strongly_connected(fixtures::sys_c(), 100) == is_strongly_connected(build_constraint_graph(fixtures::sys_c())));
  CHECK_THROWS_AS(is_robustly_strongly_connected(fixtures::sys_a(), 3), BudgetExceeded);
  CHECK(to_dot(build_constraint_graph(fixtures::sys_c())).find("e0 -> e1") != std::string::npos);
}

TEST_CASE("square irreducibility") {
  CHECK(is_irreducible_square(fixtures::sys_c()));
  CHECK_FALSE(is_irreducible_square(GainSystem(q({{"1", "0"}, {"0", "1"}}), q({{"0", "1"}, {"0", "0"}}))));
  CHECK_FALSE(is_irreducible_square(GainSystem(q({{"1", "0"}, {"1", "0"}}), q({{"0", "1"}, {"0", "1"}}))));
  CHECK_THROWS_AS(is_irreducible_square(fixtures::sys_a()), std::invalid_argument);
}

TEST_CASE("cluster merging on the fixtures") {
  const IrreducibilityReport a = test_irreducible(fixtures::sys_a());
  CHECK(a.irreducible);
  CHECK(a.rounds == 1);
  CHECK(a.history.front().clusters == std::vector<IndexSet>{{0}, {1}});
  CHECK(a.history.back().clusters == std::vector<IndexSet>{{0, 1}});

  CHECK(test_irreducible(fixtures::sys_b()).irreducible);
  CHECK(test_irreducible(fixtures::sys_c()).irreducible);

  const IrreducibilityReport d = test_irreducible(fixtures::sys_d());
  CHECK_FALSE(d.irreducible);
  REQUIRE(d.witness);
  CHECK(d.witness->cause == ReducibilityCause::NoMerge);
  REQUIRE(d.witness->selection);
  CHECK(*d.witness->selection == std::vector<std::size_t>{1, 2});
  CHECK_FALSE(is_irreducible_selection(fixtures::sys_d(), *d.witness->selection));
}

TEST_CASE("irreducibility pre-checks") {
  const GainSystem redundant(q({{"1", "0", "0"}, {"0", "1", "0"}}), q({{"0", "1", "1"}, {"1", "0", "1"}}));
  CHECK_THROWS_AS(test_irreducible(redundant), std::invalid_argument);
  const GainSystem shared(q({{"1", "1"}, {"0", "1"}}), q({{"0", "0"}, {"1", "0"}}));
  const IrreducibilityReport s = test_irreducible(shared);
  CHECK_FALSE(s.irreducible);
  CHECK(s.witness->cause == ReducibilityCause::SharedSupporter);
  CHECK_FALSE(is_irreducible_selection(shared, *s.witness->selection));
  const IrreducibilityReport one = test_irreducible(GainSystem(q({{"1", "2"}}), q({{"0", "0"}})));
  CHECK_FALSE(one.irreducible);
  CHECK(one.witness->cause == ReducibilityCause::SingleEntity);
}

TEST_CASE("brute force verdicts") {
  const BruteForceVerdict a = brute_force_irreducible(fixtures::sys_a());
  CHECK(a.irreducible);
  CHECK(a.selections_checked == 4);
  const BruteForceVerdict d = brute_force_irreducible(fixtures::sys_d());
  CHECK_FALSE(d.irreducible);
  CHECK(*d.witness == std::vector<std::size_t>{1, 2});
  CHECK(brute_force_irreducible(fixtures::sys_c()).irreducible == is_irreducible_square(fixtures::sys_c()));
  CHECK_THROWS_AS(brute_force_irreducible(fixtures::sys_a(), 2), BudgetExceeded);
}

TEST_CASE("cluster merging agrees with brute force on random systems") {
  std::mt19937_64 rng(2024);
  int irreducible = 0, reducible = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const double density = 0.15 + 0.1 * static_cast<double>(rng() % 7);
    GainSystem s = trial % 3 == 0 ? oracle::random_system(rng, n, n + rng() % 5, 9, 0.15, density)
                                  : random_block_system(rng, n, density);
    if (!validate(s).empty()) continue;
    if (!remove_redundant_affectors(s).second.empty()) continue;
    if (selection_count(s) > 10000) continue;
    const IrreducibilityReport report = test_irreducible(s);
    const BruteForceVerdict truth = brute_force_irreducible(s);
    CAPTURE(trial);
    CHECK(report.irreducible == truth.irreducible);
    CHECK(report.rounds + 1 <= std::max<std::size_t>(n, 1));
    if (!report.irreducible) {
      REQUIRE(report.witness);
      REQUIRE(report.witness->selection);
      CHECK_FALSE(is_irreducible_selection(s, *report.witness->selection));
      ++reducible;
    } else {
      ++irreducible;
    }
  }
  CHECK(irreducible > 30);
  CHECK(reducible > 30);
}

TEST_CASE("merged clusters stay inside one component of every hidden square graph") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const GainSystem s = random_block_system(rng, 2 + rng() % 4, 0.2 + 0.1 * static_cast<double>(rng() % 5));
    if (!validate(s).empty() || selection_count(s) > 2000) continue;
    const IrreducibilityReport report = test_irreducible(s);
    for (const ClusterPartition& p : report.history) {
      std::set<std::size_t> seen;
      for (const IndexSet& c : p.clusters)
        for (std::size_t e : c) CHECK(seen.insert(e).second);
      CHECK(seen.size() == s.entities());
    }
    const ClusterPartition& last = report.history.back();
    for (int sample = 0; sample < 10; ++sample) {
      const auto sel = nth_selection(s, rng() % selection_count(s));
      const SccPartition comp = scc(selection_constraint_graph(s, Selection::complete(s, sel)));
      for (const IndexSet& c : last.clusters)
        for (std::size_t e : c) CHECK(comp.component[e] == comp.component[c.front()]);
    }
  }
}
