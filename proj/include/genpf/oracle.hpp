#pragma once

#include "genpf/constraint_graph.hpp"
#include "genpf/spectral.hpp"
#include "genpf/system.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace genpf {

struct SelectionRoot {
  std::vector<std::size_t> selection;
  /// Perron root of the hidden square system.
  double root = 0.0;
  /// Isolating interval, present when the exact path was used.
  std::optional<RootInterval> exact;
};

struct OracleResult {
  double best_root = 0.0;
  double best_beta = 0.0;
  /// Indices into `table` whose root ties the minimum.
  std::vector<std::size_t> optimal;
  /// One row per complete selection, in enumeration order.
  std::vector<SelectionRoot> table;
  std::uint64_t enumerated = 0;

  bool is_optimal(const std::vector<std::size_t>& selection) const;
};

/// Relative tolerance under which two roots count as tied.
inline constexpr double kOracleTieTolerance = 1e-9;

/// Exhaustive enumeration of the complete selections. Each hidden square
/// system is solved by power iteration, and by the exact characteristic
/// polynomial when n <= 4.
/// Throws BudgetExceeded, and Error if a selection is reducible.
/// `threads == 0` picks the hardware concurrency.
OracleResult enumerate_solve(const GainSystem& system, std::uint64_t budget = kDefaultSelectionBudget,
                             unsigned threads = 0);

}  // namespace genpf
