#pragma once

#include "genpf/system.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace genpf {

/// Directed graph on entities: edge i -> j iff some supporter of i is a
/// repressor of j.
class ConstraintGraph {
 public:
  explicit ConstraintGraph(std::size_t vertices) : successors_(vertices) {}
  explicit ConstraintGraph(std::vector<IndexSet> successors);

  std::size_t vertices() const { return successors_.size(); }
  const IndexSet& successors(std::size_t v) const { return successors_.at(v); }
  bool has_edge(std::size_t from, std::size_t to) const;
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  void add_edge(std::size_t from, std::size_t to);

  friend bool operator==(const ConstraintGraph&, const ConstraintGraph&) = default;

 private:
  std::vector<IndexSet> successors_;
};

ConstraintGraph build_constraint_graph(const GainSystem& system);

/// Constraint graph of the hidden square system picked by a complete selection.
ConstraintGraph selection_constraint_graph(const GainSystem& system, const Selection& selection);

struct SccPartition {
  /// Component id per vertex. Ids are ordered by the smallest vertex they contain.
  std::vector<std::size_t> component;
  std::size_t count = 0;
  /// Edges between distinct components, sorted and deduplicated.
  std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;

  std::vector<IndexSet> members() const;
};

SccPartition scc(const ConstraintGraph& graph);

bool is_strongly_connected(const ConstraintGraph& graph);

struct BfsLayers {
  std::vector<IndexSet> layers;
  IndexSet unreachable;
};

/// Layer k holds the vertices at shortest directed distance k from `root`.
BfsLayers bfs_layers(const ConstraintGraph& graph, std::size_t root);

inline constexpr std::uint64_t kDefaultSelectionBudget = 1'000'000;

/// Exhaustive check that every hidden square system has a strongly connected
/// constraint graph. Throws BudgetExceeded when prod |S_i| > budget.
bool is_robustly_strongly_connected(const GainSystem& system,
                                    std::uint64_t budget = kDefaultSelectionBudget);

/// Graphviz rendering with 0-based entity labels.
std::string to_dot(const ConstraintGraph& graph, const std::string& name = "constraint_graph");

}  // namespace genpf
