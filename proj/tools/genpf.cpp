// Command-line front end: solve, check-irreducible, oracle, feasible, gen,
// verify, fixture. Reports go to stdout as JSON (or terse text); errors go to
// stderr with exit code 1. Exit code 2 marks a negative verdict.

#include "report.hpp"

#include "genpf/constraint_graph.hpp"
#include "genpf/error.hpp"
#include "genpf/generators.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace genpf;
using genpf::cli::envelope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerdict = 2;

struct Output {
  std::string format = "json";
  bool timing = false;
};

struct Input {
  std::string path;
  std::string bytes;
  Json doc;
  std::string hash() const { return cli::content_hash(bytes); }
};

Input load(const std::string& path) {
  Input in;
  in.path = path;
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot read " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  in.bytes = buffer.str();
  try {
    in.doc = Json::parse(in.bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return in;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << report.at("command").get<std::string>() << " (" << report.at("arithmetic").get<std::string>() << ")\n";
  for (const auto& [key, value] : report.at("result").items()) {
    if (value.is_object()) {
      if (value.contains("passed")) {
        out << key << ": " << (value.at("passed").get<bool>() ? "pass" : "FAIL") << "\n";
      } else if (value.contains("decimal")) {
        out << key << ": " << value.at("decimal").dump() << "\n";
      } else {
        out << key << ": " << value.dump() << "\n";
      }
      continue;
    }
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << key << ": " << value.size() << " entries\n";
      continue;
    }
    out << key << ": " << value.dump() << "\n";
  }
  return out.str();
}

void emit(Json report, const Output& output, std::chrono::steady_clock::time_point start) {
  if (output.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  if (output.format == "text") {
    std::cout << render_text(report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

ArithmeticMode mode_from(bool exact) { return exact ? ArithmeticMode::Exact : ArithmeticMode::Auto; }

Json solver_config_json(const SolverConfig& cfg) {
  return Json{{"gap_mode", to_string(cfg.gap_mode)},
              {"tolerance", cfg.tolerance},
              {"max_retries", cfg.max_retries},
              {"exact_verification", cfg.exact_verification},
              {"search_arithmetic", to_string(cfg.search_mode)},
              {"tie_break", cfg.tie_break}};
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  double tol = kDefaultSolverTolerance;
  std::size_t retries = 8;
  bool exact = false;
  std::string gap = "practical";
  std::string trace;
};

int cmd_solve(const SolveArgs& a, const Output& output) {
  const auto start = std::chrono::steady_clock::now();
  const Input in = load(a.instance);
  const GainSystem system = system_from_json(in.doc);
  SolverConfig cfg;
  cfg.tolerance = a.tol;
  cfg.max_retries = a.retries;
  cfg.search_mode = mode_from(a.exact);
  if (a.gap == "theoretical") {
    cfg.gap_mode = GapMode::Theoretical;
  } else if (a.gap != "practical") {
    throw std::invalid_argument("--gap must be practical or theoretical");
  }
  Json config = solver_config_json(cfg);
  config["instance"] = a.instance;

  try {
    const PfSolution sol = solve(system, cfg);
    Json result = cli::solution_json(sol);
    result["status"] = "solved";
    if (!a.trace.empty()) write_text_file(a.trace, cli::trace_json(sol.trace).dump(2) + "\n");
    emit(envelope("solve", in.hash(), std::move(config), to_string(cfg.search_mode), std::move(result)), output, start);
    return kExitOk;
  } catch (const ReducibleSystem& e) {
    Json result{{"status", "reducible"}, {"message", e.what()}};
    emit(envelope("solve", in.hash(), std::move(config), to_string(cfg.search_mode), std::move(result)), output, start);
    return kExitVerdict;
  } catch (const VerificationFailed& e) {
    Json result = cli::solution_json(e.best());
    result["status"] = "verification-failed";
    emit(envelope("solve", in.hash(), std::move(config), to_string(cfg.search_mode), std::move(result)), output, start);
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

struct CheckArgs {
  std::string instance;
  std::uint64_t budget = kDefaultSelectionBudget;
  bool brute_force = false;
  std::string dot;
};

int cmd_check(const CheckArgs& a, const Output& output) {
  const auto start = std::chrono::steady_clock::now();
  const Input in = load(a.instance);
  const GainSystem system = system_from_json(in.doc);
  const IrreducibilityReport report = test_irreducible(system);
  Json result = cli::irreducibility_json(report);
  result["class"] = [&]() -> Json {
    try {
      return to_string(classify(system));
    } catch (const Unclassifiable&) {
      return "unclassified";
    }
  }();
  if (a.brute_force) {
    const BruteForceVerdict bf = brute_force_irreducible(system, a.budget);
    result["brute_force"] = {{"irreducible", bf.irreducible},
                             {"selections_checked", bf.selections_checked},
                             {"witness", bf.witness ? Json(*bf.witness) : Json(nullptr)},
                             {"agrees", bf.irreducible == report.irreducible}};
  }
  if (!a.dot.empty()) write_text_file(a.dot, to_dot(build_constraint_graph(system), "constraints"));
  Json config{{"instance", a.instance}, {"budget", a.budget}, {"brute_force", a.brute_force}};
  emit(envelope("check-irreducible", in.hash(), std::move(config), "exact", std::move(result)), output, start);
  return report.irreducible ? kExitOk : kExitVerdict;
}

struct OracleArgs {
  std::string instance;
  std::uint64_t budget = kDefaultSelectionBudget;
  unsigned threads = 0;
};

int cmd_oracle(const OracleArgs& a, const Output& output) {
  const auto start = std::chrono::steady_clock::now();
  const Input in = load(a.instance);
  const GainSystem system = system_from_json(in.doc);
  const OracleResult result = enumerate_solve(system, a.budget, a.threads);
  Json config{{"instance", a.instance}, {"budget", a.budget}};
  const std::string arithmetic = system.entities() <= kExactDegreeLimit ? "exact" : "float";
  emit(envelope("oracle", in.hash(), std::move(config), arithmetic, cli::oracle_json(result)), output, start);
  return kExitOk;
}

struct FeasibleArgs {
  std::string instance;
  std::string beta;
  bool exact = false;
};

int cmd_feasible(const FeasibleArgs& a, const Output& output) {
  const auto start = std::chrono::steady_clock::now();
  const Input in = load(a.instance);
  const GainSystem system = system_from_json(in.doc);
  const Rational beta = parse_rational(a.beta);
  if (sgn(beta) <= 0) throw std::invalid_argument("--beta must be positive");
  const FeasibilityVerdict v = feasible(system, beta, mode_from(a.exact));
  Json config{{"instance", a.instance}, {"beta", to_string(beta)}, {"arithmetic", to_string(mode_from(a.exact))}};
  emit(envelope("feasible", in.hash(), std::move(config), to_string(v.mode), cli::verdict_json(v, beta)), output,
       start);
  return v.feasible ? kExitOk : kExitVerdict;
}

struct VerifyArgs {
  std::string instance;
  std::string solution;
  std::optional<double> tol;
};

int cmd_verify(const VerifyArgs& a, const Output& output) {
  const auto start = std::chrono::steady_clock::now();
  const Input in = load(a.instance);
  const GainSystem system = system_from_json(in.doc);
  const Input sol_in = load(a.solution);
  const Json& sol = sol_in.doc.contains("result") ? sol_in.doc.at("result") : sol_in.doc;
  if (!sol.contains("beta_star") || !sol.contains("x")) {
    throw std::invalid_argument("solution must carry \"beta_star\" and \"x\"");
  }
  const double beta_star = sol.at("beta_star").get<double>();
  const std::vector<double> x = sol.at("x").get<std::vector<double>>();
  double tol = kDefaultSolverTolerance;
  if (a.tol) {
    tol = *a.tol;
  } else if (sol.contains("tolerance") && sol.at("tolerance").is_object()) {
    tol = sol.at("tolerance").at("decimal").get<double>();
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const Verification v = verify_solution(system, beta_star, x, 10.0 * tol, ArithmeticMode::Exact);
  Json result = cli::verification_json(v);
  bool selection_ok = true;
  if (sol.contains("selection")) {
    const auto selection = sol.at("selection").get<std::vector<std::size_t>>();
    selection_ok = selection.size() == system.entities();
    for (std::size_t i = 0; i < selection.size() && selection_ok; ++i) {
      selection_ok = selection[i] < x.size() && x[selection[i]] > 0.0;
    }
    result["selection_ok"] = selection_ok;
  } else {
    result["selection_ok"] = nullptr;
  }
  if (sol_in.doc.contains("input_hash")) {
    result["input_hash_matches"] = sol_in.doc.at("input_hash").get<std::string>() == in.hash();
  } else {
    result["input_hash_matches"] = nullptr;
  }
  const bool passed = v.passed() && selection_ok;
  result["passed"] = passed;
  Json config{{"instance", a.instance}, {"solution", a.solution}, {"tolerance", tol}};
  emit(envelope("verify", in.hash(), std::move(config), "exact", std::move(result)), output, start);
  return passed ? kExitOk : kExitVerdict;
}

struct GenArgs {
  std::string kind;
  std::string spec;
  std::string out;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> max_denominator;
  RandomInstanceSpec random;
};

int cmd_gen(const GenArgs& a, const Output& output) {
  const auto start = std::chrono::steady_clock::now();
  Json config{{"kind", a.kind}};
  std::string hash = cli::content_hash("");
  std::optional<GainSystem> system;
  std::size_t attempts = 0;
  if (a.kind == "power-control" || a.kind == "economy") {
    if (a.spec.empty()) throw std::invalid_argument("gen " + a.kind + " needs --spec");
    const Input in = load(a.spec);
    hash = in.hash();
    config["spec"] = a.spec;
    if (a.kind == "power-control") {
      config["max_denominator"] = a.max_denominator ? Json(*a.max_denominator) : Json(nullptr);
      system = miso_to_system(miso_from_json(in.doc), a.max_denominator);
    } else {
      system = economy_to_system(economy_from_json(in.doc));
    }
  } else if (a.kind == "random") {
    config["seed"] = a.seed;
    config["entities"] = {a.random.min_entities, a.random.max_entities};
    config["supporters"] = {a.random.min_supporters, a.random.max_supporters};
    config["max_affectors"] = a.random.max_affectors;
    config["gains"] = {a.random.min_gain, a.random.max_gain};
    config["repressor_density"] = a.random.repressor_density;
    RandomInstance r = random_irreducible_instance(a.seed, a.random);
    attempts = r.attempts;
    system = std::move(r.system);
  } else {
    throw std::invalid_argument("unknown generator '" + a.kind + "' (power-control, economy, random)");
  }
  const Json instance = system_to_json(*system);
  Json result{{"instance", instance}, {"validation", validate(*system)}};
  if (a.kind == "random") result["attempts"] = attempts;
  if (!a.out.empty()) {
    write_text_file(a.out, instance.dump(2) + "\n");
    result["written_to"] = a.out;
    config["out"] = a.out;
  }
  emit(envelope("gen", hash, std::move(config), "exact", std::move(result)), output, start);
  return kExitOk;
}

int cmd_fixture(const std::string& name, const std::string& out) {
  std::optional<GainSystem> system;
  if (name == "sys-a") system = fixtures::sys_a();
  else if (name == "sys-b") system = fixtures::sys_b();
  else if (name == "sys-c") system = fixtures::sys_c();
  else if (name == "sys-d") system = fixtures::sys_d();
  else throw std::invalid_argument("unknown fixture '" + name + "' (sys-a, sys-b, sys-c, sys-d)");
  const std::string text = system_to_json(*system).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Perron-Frobenius solver for nonsquare nonnegative systems"};
  app.set_version_flag("--version", std::string(cli::kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Output output;
  app.add_option("--format", output.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", output.timing, "Add wall-clock timing to the report (breaks byte-identical output)");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Compute beta*, the Perron root and a 0* vector");
  solve_cmd->add_option("instance", solve_args.instance)->required();
  solve_cmd->add_option("--tol", solve_args.tol, "Bisection gap");
  solve_cmd->add_option("--retries", solve_args.retries, "Refinement rounds after a failed verification");
  solve_cmd->add_flag("--exact", solve_args.exact, "Exact pivoting for every oracle call");
  solve_cmd->add_option("--gap", solve_args.gap, "practical or theoretical");
  solve_cmd->add_option("--trace", solve_args.trace, "Write the search trace to this file");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check-irreducible", "Cluster-merging irreducibility test");
  check_cmd->add_option("instance", check_args.instance)->required();
  check_cmd->add_flag("--brute-force", check_args.brute_force, "Also check every selection");
  check_cmd->add_option("--budget", check_args.budget, "Selection budget for --brute-force");
  check_cmd->add_option("--dot", check_args.dot, "Write the constraint graph in DOT format");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate every selection");
  oracle_cmd->add_option("instance", oracle_args.instance)->required();
  oracle_cmd->add_option("--budget", oracle_args.budget, "Maximum number of selections");
  oracle_cmd->add_option("--threads", oracle_args.threads, "Worker threads (0: hardware)");

  FeasibleArgs feasible_args;
  auto* feasible_cmd = app.add_subcommand("feasible", "Decide feasibility at one beta");
  feasible_cmd->add_option("instance", feasible_args.instance)->required();
  feasible_cmd->add_option("--beta", feasible_args.beta, "Positive rational, e.g. 3/2 or 1.5")->required();
  feasible_cmd->add_flag("--exact", feasible_args.exact, "Exact pivoting");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a solve report against its instance");
  verify_cmd->add_option("instance", verify_args.instance)->required();
  verify_cmd->add_option("solution", verify_args.solution)->required();
  verify_cmd->add_option("--tol", verify_args.tol, "Tolerance behind the bracket check (default: the report's)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Build an instance from a scenario or at random");
  gen_cmd->add_option("kind", gen_args.kind, "power-control, economy or random")->required();
  gen_cmd->add_option("--spec", gen_args.spec, "Scenario JSON");
  gen_cmd->add_option("-o,--out", gen_args.out, "Write the instance here");
  gen_cmd->add_option("--seed", gen_args.seed, "Seed for random instances");
  gen_cmd->add_option("--max-denominator", gen_args.max_denominator, "Round path gains to this denominator");
  gen_cmd->add_option("--min-entities", gen_args.random.min_entities);
  gen_cmd->add_option("--max-entities", gen_args.random.max_entities);
  gen_cmd->add_option("--max-supporters", gen_args.random.max_supporters);
  gen_cmd->add_option("--max-affectors", gen_args.random.max_affectors);
  gen_cmd->add_option("--max-gain", gen_args.random.max_gain);
  gen_cmd->add_option("--density", gen_args.random.repressor_density);

  std::string fixture_name;
  std::string fixture_out;
  auto* fixture_cmd = app.add_subcommand("fixture", "Print a built-in instance");
  fixture_cmd->add_option("name", fixture_name, "sys-a, sys-b, sys-c or sys-d")->required();
  fixture_cmd->add_option("-o,--out", fixture_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, output);
    if (*check_cmd) return cmd_check(check_args, output);
    if (*oracle_cmd) return cmd_oracle(oracle_args, output);
    if (*feasible_cmd) return cmd_feasible(feasible_args, output);
    if (*verify_cmd) return cmd_verify(verify_args, output);
    if (*gen_cmd) return cmd_gen(gen_args, output);
    if (*fixture_cmd) return cmd_fixture(fixture_name, fixture_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
