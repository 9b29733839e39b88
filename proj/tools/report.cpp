#include "report.hpp"

#include <cstdio>

namespace genpf::cli {

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json number_forms(const Rational& value) {
  return Json{{"decimal", value.get_d()}, {"exact", to_string(value)}};
}

namespace {

Json interval_json(const Rational& lower, const Rational& upper) {
  return Json{{"lower", number_forms(lower)}, {"upper", number_forms(upper)}};
}

Json bracket_steps(const std::vector<BracketStep>& steps) {
  Json out = Json::array();
  for (const BracketStep& s : steps) {
    out.push_back({{"beta", number_forms(s.beta)}, {"feasible", s.feasible}, {"arithmetic", to_string(s.mode)}});
  }
  return out;
}

}  // namespace

Json verification_json(const Verification& v) {
  return Json{{"passed", v.passed()},
              {"max_residual", v.max_residual},
              {"residual_bound", v.residual_bound},
              {"residuals_ok", v.residuals_ok},
              {"above_infeasible", v.above_infeasible},
              {"below_feasible", v.below_feasible},
              {"zero_star_ok", v.zero_star_ok},
              {"exact_agrees", v.exact_agrees},
              {"within_max_gain", v.within_max_gain},
              {"epsilon", v.epsilon},
              {"bracket_arithmetic", to_string(v.bracket_mode)}};
}

Json trace_json(const SearchTrace& trace) {
  Json elimination = Json::array();
  for (const EliminationStep& s : trace.elimination) {
    elimination.push_back({{"entity", s.entity}, {"tried", s.tried}, {"chosen", s.chosen}});
  }
  return Json{{"doubling", bracket_steps(trace.doubling)},
              {"bisection", bracket_steps(trace.bisection)},
              {"elimination", std::move(elimination)}};
}

Json solution_json(const PfSolution& sol) {
  Json r;
  r["beta_star"] = sol.beta_star;
  r["root"] = sol.root;
  if (sol.exact) {
    r["exact"] = {{"characteristic_polynomial", sol.exact->characteristic.to_string("t")},
                  {"root_interval", interval_json(sol.exact->root.lower, sol.exact->root.upper)},
                  {"beta_interval", interval_json(sol.exact->beta_lower, sol.exact->beta_upper)}};
  } else {
    r["exact"] = nullptr;
  }
  r["bracket"] = interval_json(sol.beta_minus, sol.beta_plus);
  r["x"] = sol.x;
  r["selection"] = sol.selection;
  r["residuals"] = sol.residuals;
  r["removed_affectors"] = sol.removed_affectors;
  r["tolerance"] = number_forms(sol.tolerance);
  r["retries"] = sol.retries;
  r["pf_iterations"] = sol.pf_iterations;
  r["bisection_rounds"] = sol.trace.bisection.size();
  Json gap;
  gap["log2_theoretical"] = sol.gap.log2_theoretical;
  gap["exact_log2_theoretical"] =
      sol.gap.exact_log2_theoretical ? Json(*sol.gap.exact_log2_theoretical) : Json(nullptr);
  gap["log2_tolerance"] = sol.gap.log2_tolerance;
  gap["meets_theoretical"] = sol.gap.meets_theoretical;
  r["gap"] = std::move(gap);
  r["verification"] = verification_json(sol.verification);
  return r;
}

Json irreducibility_json(const IrreducibilityReport& report) {
  Json r;
  r["irreducible"] = report.irreducible;
  r["rounds"] = report.rounds;
  Json history = Json::array();
  for (const ClusterPartition& p : report.history) {
    history.push_back({{"round", p.round}, {"clusters", p.clusters}, {"repressor_union", p.repressor_union}});
  }
  r["history"] = std::move(history);
  if (report.witness) {
    const ReducibilityWitness& w = *report.witness;
    Json wj;
    wj["cause"] = to_string(w.cause);
    wj["message"] = w.message;
    wj["selection"] = w.selection ? Json(*w.selection) : Json(nullptr);
    wj["source_cluster"] = w.source_cluster ? Json(*w.source_cluster) : Json(nullptr);
    if (w.cluster_graph) {
      Json edges = Json::array();
      for (const auto& [from, to] : w.cluster_graph->edges()) edges.push_back({from, to});
      wj["cluster_graph_edges"] = std::move(edges);
    } else {
      wj["cluster_graph_edges"] = nullptr;
    }
    r["witness"] = std::move(wj);
  } else {
    r["witness"] = nullptr;
  }
  return r;
}

Json oracle_json(const OracleResult& result) {
  Json r;
  r["best_root"] = result.best_root;
  r["best_beta"] = result.best_beta;
  r["enumerated"] = result.enumerated;
  Json optimal = Json::array();
  for (std::size_t k : result.optimal) optimal.push_back(result.table[k].selection);
  r["optimal_selections"] = std::move(optimal);
  Json table = Json::array();
  for (const SelectionRoot& row : result.table) {
    Json entry{{"selection", row.selection}, {"root", row.root}, {"beta", 1.0 / row.root}};
    entry["root_interval"] = row.exact ? interval_json(row.exact->lower, row.exact->upper) : Json(nullptr);
    table.push_back(std::move(entry));
  }
  r["table"] = std::move(table);
  return r;
}

Json verdict_json(const FeasibilityVerdict& verdict, const Rational& beta) {
  Json r;
  r["beta"] = number_forms(beta);
  r["feasible"] = verdict.feasible;
  r["witness"] = verdict.feasible ? Json(verdict.witness) : Json(nullptr);
  if (verdict.feasible && verdict.exact_witness) {
    Json exact = Json::array();
    for (const Rational& q : *verdict.exact_witness) exact.push_back(to_string(q));
    r["exact_witness"] = std::move(exact);
  } else {
    r["exact_witness"] = nullptr;
  }
  r["max_violation"] = verdict.max_violation;
  r["arithmetic"] = to_string(verdict.mode);
  return r;
}

Json envelope(const std::string& command, const std::string& input_hash, Json config, const std::string& arithmetic,
              Json result) {
  Json doc;
  doc["command"] = command;
  doc["version"] = kVersion;
  doc["input_hash"] = input_hash;
  doc["config"] = std::move(config);
  doc["arithmetic"] = arithmetic;
  doc["result"] = std::move(result);
  return doc;
}

}  // namespace genpf::cli
