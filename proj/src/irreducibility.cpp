#include "genpf/irreducibility.hpp"

#include "genpf/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace genpf {

namespace {

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ClusterPartition make_partition(const GainSystem& system, std::size_t round, std::vector<IndexSet> clusters) {
  ClusterPartition p;
  p.round = round;
  p.clusters = std::move(clusters);
  for (const IndexSet& c : p.clusters) {
    IndexSet u;
    for (std::size_t k : c) u = set_union(u, system.repressors(k));
    p.repressor_union.push_back(std::move(u));
  }
  return p;
}

/// Cluster graph D_t: edge a -> b iff some entity of cluster a has all its
/// supporters inside the repressor union of cluster b.
ConstraintGraph cluster_graph(const GainSystem& system, const ClusterPartition& p) {
  const std::size_t k = p.clusters.size();
  ConstraintGraph d(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      for (std::size_t entity : p.clusters[a]) {
        if (is_subset(system.supporters(entity), p.repressor_union[b])) {
          d.add_edge(a, b);
          break;
        }
      }
    }
  }
  return d;
}

std::vector<std::size_t> lowest_supporters(const GainSystem& system) {
  std::vector<std::size_t> sel(system.entities());
  for (std::size_t i = 0; i < system.entities(); ++i) sel[i] = system.supporters(i).front();
  return sel;
}

/// Selection that cuts every edge into `target`: each entity with an edge into
/// the cluster picks a supporter outside the cluster's repressor union.
std::vector<std::size_t> isolating_selection(const GainSystem& system, const IndexSet& target,
                                             const IndexSet& target_repressors) {
  std::vector<std::size_t> sel = lowest_supporters(system);
  const ConstraintGraph cg = build_constraint_graph(system);
  for (std::size_t x = 0; x < system.entities(); ++x) {
    if (std::binary_search(target.begin(), target.end(), x)) continue;
    const bool feeds_target = std::any_of(target.begin(), target.end(),
                                          [&](std::size_t y) { return cg.has_edge(x, y); });
    if (!feeds_target) continue;
    const IndexSet& s = system.supporters(x);
    auto it = std::find_if(s.begin(), s.end(), [&](std::size_t a) {
      return !std::binary_search(target_repressors.begin(), target_repressors.end(), a);
    });
    if (it == s.end()) {
      throw std::logic_error("cluster graph has an edge the witness construction cannot cut");
    }
    sel[x] = *it;
  }
  return sel;
}

}  // namespace

std::string to_string(ReducibilityCause cause) {
  switch (cause) {
    case ReducibilityCause::SingleEntity: return "single-entity";
    case ReducibilityCause::SharedSupporter: return "shared-supporter";
    case ReducibilityCause::NoMerge: return "no-merge";
  }
  return "unknown";
}

bool is_irreducible_square(const GainSystem& system) {
  SystemClass tag;
  try {
    tag = classify(system);
  } catch (const Unclassifiable&) {
    throw std::invalid_argument("not square");
  }
  if (tag != SystemClass::Square) throw std::invalid_argument("not square");

  const std::size_t n = system.entities();
  std::vector<bool> used(system.affectors(), false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = system.supporters(i).front();
    if (used[a]) return false;  // shared supporter: singular supporter matrix
    used[a] = true;
  }
  if (n == 1) return false;
  return is_strongly_connected(build_constraint_graph(system));
}

bool is_irreducible_selection(const GainSystem& system, const std::vector<std::size_t>& selection) {
  std::vector<std::size_t> sorted = selection;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  const SelectedSystem square = apply_selection(system, Selection::complete(system, selection));
  try {
    if (classify(square.system) != SystemClass::Square) return false;
  } catch (const Unclassifiable&) {
    return false;
  }
  return is_irreducible_square(square.system);
}

IrreducibilityReport test_irreducible(const GainSystem& system) {
  if (auto violations = validate(system); !violations.empty()) {
    throw std::invalid_argument("invalid system: " + violations.front());
  }
  if (auto [reduced, removed] = remove_redundant_affectors(system); !removed.empty()) {
    throw std::invalid_argument("system has redundant affectors; remove them before testing irreducibility");
  }

  const std::size_t n = system.entities();
  IrreducibilityReport report;

  if (n == 1) {
    report.witness = ReducibilityWitness{ReducibilityCause::SingleEntity,
                                         "a single entity cannot be repressed by its own supporters",
                                         lowest_supporters(system), std::nullopt, std::nullopt, std::nullopt};
    report.history.push_back(make_partition(system, 0, {{0}}));
    return report;
  }

  // Shared supporters make some hidden supporter matrix singular.
  std::vector<std::optional<std::size_t>> owner(system.affectors());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a : system.supporters(i)) {
      if (owner[a]) {
        std::vector<std::size_t> sel = lowest_supporters(system);
        sel[*owner[a]] = a;
        sel[i] = a;
        report.witness = ReducibilityWitness{
            ReducibilityCause::SharedSupporter,
            "affector " + std::to_string(a) + " supports entities " + std::to_string(*owner[a]) + " and " +
                std::to_string(i),
            sel, std::nullopt, std::nullopt, std::nullopt};
        return report;
      }
      owner[a] = i;
    }
  }

  std::vector<IndexSet> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});
  ClusterPartition partition = make_partition(system, 0, std::move(clusters));

  while (partition.clusters.size() > 1) {
    report.history.push_back(partition);
    const ConstraintGraph d = cluster_graph(system, partition);
    const SccPartition components = scc(d);

    if (components.count == partition.clusters.size()) {
      // No merge possible: D_t is acyclic, so some cluster has no incoming edge.
      std::size_t source = 0;
      std::vector<bool> has_in(d.vertices(), false);
      for (const auto& [from, to] : d.edges()) has_in[to] = true;
      while (source < has_in.size() && has_in[source]) ++source;
      if (source == has_in.size()) throw std::logic_error("acyclic cluster graph without a source");

      ReducibilityWitness w;
      w.cause = ReducibilityCause::NoMerge;
      w.message = "round " + std::to_string(partition.round) + ": cluster graph has no cycle; cluster " +
                  std::to_string(source) + " has no incoming edge";
      w.selection = isolating_selection(system, partition.clusters[source], partition.repressor_union[source]);
      w.stuck_partition = partition;
      w.cluster_graph = d;
      w.source_cluster = source;
      report.witness = std::move(w);
      report.rounds = partition.round;
      return report;
    }

    std::vector<IndexSet> merged(components.count);
    for (std::size_t c = 0; c < partition.clusters.size(); ++c) {
      IndexSet& target = merged[components.component[c]];
      target = set_union(target, partition.clusters[c]);
    }
    partition = make_partition(system, partition.round + 1, std::move(merged));
  }

  report.history.push_back(partition);
  report.irreducible = true;
  report.rounds = partition.round;
  return report;
}

BruteForceVerdict brute_force_irreducible(const GainSystem& system, std::uint64_t budget) {
  const std::uint64_t count = selection_count(system);
  if (count > budget) throw BudgetExceeded(count, budget);
  BruteForceVerdict verdict;
  verdict.irreducible = count > 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<std::size_t> sel = nth_selection(system, k);
    ++verdict.selections_checked;
    if (!is_irreducible_selection(system, sel)) {
      verdict.irreducible = false;
      verdict.witness = std::move(sel);
      break;
    }
  }
  return verdict;
}

}  // namespace genpf
