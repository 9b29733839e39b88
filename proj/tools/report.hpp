#pragma once

#include "genpf/feasibility.hpp"
#include "genpf/io.hpp"
#include "genpf/irreducibility.hpp"
#include "genpf/oracle.hpp"
#include "genpf/solver.hpp"

#include <cstdint>
#include <string>

namespace genpf::cli {

inline constexpr const char* kVersion = "0.1.0";

/// 64-bit FNV-1a of the raw bytes, as 16 hex digits.
std::string content_hash(const std::string& bytes);

/// {"decimal": d, "exact": "p/q"}
Json number_forms(const Rational& value);

Json solution_json(const PfSolution& sol);
Json trace_json(const SearchTrace& trace);
Json irreducibility_json(const IrreducibilityReport& report);
Json oracle_json(const OracleResult& result);
Json verdict_json(const FeasibilityVerdict& verdict, const Rational& beta);
Json verification_json(const Verification& v);

/// Envelope shared by every command.
Json envelope(const std::string& command, const std::string& input_hash, Json config, const std::string& arithmetic,
              Json result);

}  // namespace genpf::cli
