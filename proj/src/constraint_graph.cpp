#include "genpf/constraint_graph.hpp"

#include "genpf/error.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace genpf {

ConstraintGraph::ConstraintGraph(std::vector<IndexSet> successors) : successors_(std::move(successors)) {
  for (auto& s : successors_) {
    for (std::size_t v : s) {
      if (v >= successors_.size()) throw std::invalid_argument("edge target out of range");
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

bool ConstraintGraph::has_edge(std::size_t from, std::size_t to) const {
  const IndexSet& s = successors_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::size_t ConstraintGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : successors_) total += s.size();
  return total;
}

std::vector<std::pair<std::size_t, std::size_t>> ConstraintGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t v = 0; v < successors_.size(); ++v)
    for (std::size_t w : successors_[v]) out.emplace_back(v, w);
  return out;
}

void ConstraintGraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= vertices() || to >= vertices()) throw std::invalid_argument("edge endpoint out of range");
  IndexSet& s = successors_[from];
  auto it = std::lower_bound(s.begin(), s.end(), to);
  if (it == s.end() || *it != to) s.insert(it, to);
}

ConstraintGraph build_constraint_graph(const GainSystem& system) {
  const std::size_t n = system.entities();
  ConstraintGraph graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    const IndexSet& supporters = system.supporters(i);
    for (std::size_t j = 0; j < n; ++j) {
      const IndexSet& repressors = system.repressors(j);
      // Both sets are sorted; look for a common affector.
      auto a = supporters.begin();
      auto b = repressors.begin();
      while (a != supporters.end() && b != repressors.end()) {
        if (*a == *b) {
          graph.add_edge(i, j);
          break;
        }
        if (*a < *b) ++a;
        else ++b;
      }
    }
  }
  return graph;
}

ConstraintGraph selection_constraint_graph(const GainSystem& system, const Selection& selection) {
  if (!selection.is_complete()) throw std::invalid_argument("selection_constraint_graph needs a complete selection");
  return build_constraint_graph(apply_selection(system, selection).system);
}

std::vector<IndexSet> SccPartition::members() const {
  std::vector<IndexSet> out(count);
  for (std::size_t v = 0; v < component.size(); ++v) out[component[v]].push_back(v);
  return out;
}

SccPartition scc(const ConstraintGraph& graph) {
  // Iterative Tarjan (lowlink) search.
  const std::size_t n = graph.vertices();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> raw(n, kUnvisited);
  std::size_t next_index = 0;
  std::size_t raw_count = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t next_child;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& frame = call.back();
      const std::size_t v = frame.vertex;
      const IndexSet& succ = graph.successors(v);
      if (frame.next_child < succ.size()) {
        const std::size_t w = succ[frame.next_child++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      if (lowlink[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw[w] = raw_count;
        } while (w != v);
        ++raw_count;
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().vertex;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }

  // Renumber so component ids follow the smallest contained vertex.
  std::vector<std::size_t> renumber(raw_count, kUnvisited);
  SccPartition result;
  result.component.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (renumber[raw[v]] == kUnvisited) renumber[raw[v]] = result.count++;
    result.component[v] = renumber[raw[v]];
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : graph.successors(v)) {
      if (result.component[v] != result.component[w]) {
        result.condensation_edges.emplace_back(result.component[v], result.component[w]);
      }
    }
  }
  std::sort(result.condensation_edges.begin(), result.condensation_edges.end());
  result.condensation_edges.erase(
      std::unique(result.condensation_edges.begin(), result.condensation_edges.end()),
      result.condensation_edges.end());
  return result;
}

bool is_strongly_connected(const ConstraintGraph& graph) {
  return graph.vertices() > 0 && scc(graph).count == 1;
}

BfsLayers bfs_layers(const ConstraintGraph& graph, std::size_t root) {
  const std::size_t n = graph.vertices();
  if (root >= n) throw std::invalid_argument("bfs root out of range");
  std::vector<bool> seen(n, false);
  BfsLayers out;
  IndexSet frontier{root};
  seen[root] = true;
  while (!frontier.empty()) {
    IndexSet next;
    for (std::size_t v : frontier) {
      for (std::size_t w : graph.successors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          next.push_back(w);
        }
      }
    }
    std::sort(next.begin(), next.end());
    out.layers.push_back(std::move(frontier));
    frontier = std::move(next);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) out.unreachable.push_back(v);
  }
  return out;
}

bool is_robustly_strongly_connected(const GainSystem& system, std::uint64_t budget) {
  const std::uint64_t count = selection_count(system);
  if (count > budget) throw BudgetExceeded(count, budget);
  for (std::uint64_t k = 0; k < count; ++k) {
    const Selection selection = Selection::complete(system, nth_selection(system, k));
    if (!is_strongly_connected(selection_constraint_graph(system, selection))) return false;
  }
  return count > 0;
}

std::string to_dot(const ConstraintGraph& graph, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t v = 0; v < graph.vertices(); ++v) out << "  e" << v << " [label=\"E" << v << "\"];\n";
  for (const auto& [from, to] : graph.edges()) out << "  e" << from << " -> e" << to << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace genpf
