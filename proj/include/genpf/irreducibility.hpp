#pragma once

#include "genpf/constraint_graph.hpp"
#include "genpf/system.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace genpf {

/// Entity clusters at the start of one merging round.
struct ClusterPartition {
  std::size_t round = 0;
  /// Disjoint, covering, each sorted; ordered by smallest entity.
  std::vector<IndexSet> clusters;
  /// Union of the members' repressor sets, per cluster.
  std::vector<IndexSet> repressor_union;
};

enum class ReducibilityCause {
  /// One entity: every hidden square system has the 1x1 zero repressor matrix.
  SingleEntity,
  /// Two entities share a supporter, so some selection has a singular supporter matrix.
  SharedSupporter,
  /// A round of cluster merging found no cycle in the cluster graph.
  NoMerge,
};

std::string to_string(ReducibilityCause cause);

struct ReducibilityWitness {
  ReducibilityCause cause;
  std::string message;
  /// A complete selection whose hidden square system is reducible.
  std::optional<std::vector<std::size_t>> selection;
  /// For NoMerge: the stuck partition, its cluster graph and a cluster
  /// without incoming edges.
  std::optional<ClusterPartition> stuck_partition;
  std::optional<ConstraintGraph> cluster_graph;
  std::optional<std::size_t> source_cluster;
};

struct IrreducibilityReport {
  bool irreducible = false;
  /// Merging rounds executed; at most n - 1.
  std::size_t rounds = 0;
  /// Partition at the start of every executed round, plus the final one.
  std::vector<ClusterPartition> history;
  std::optional<ReducibilityWitness> witness;
};

/// Direct test for a square system: disjoint (hence nonsingular) supporters
/// and a strongly connected constraint graph. A single entity is reducible.
/// Throws std::invalid_argument if the system is not square.
bool is_irreducible_square(const GainSystem& system);

/// Whether the hidden square system of one complete selection is irreducible.
/// Colliding or overlapping supporters count as singular.
bool is_irreducible_selection(const GainSystem& system, const std::vector<std::size_t>& selection);

/// Cluster-merging irreducibility test for square and nonsquare systems.
/// Requires a valid system without redundant affectors (std::invalid_argument otherwise).
IrreducibilityReport test_irreducible(const GainSystem& system);

struct BruteForceVerdict {
  bool irreducible = false;
  std::uint64_t selections_checked = 0;
  std::optional<std::vector<std::size_t>> witness;
};

/// Checks every complete selection. Throws BudgetExceeded when prod |S_i| > budget.
BruteForceVerdict brute_force_irreducible(const GainSystem& system,
                                          std::uint64_t budget = kDefaultSelectionBudget);

}  // namespace genpf
