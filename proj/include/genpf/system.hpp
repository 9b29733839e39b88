#pragma once

#include "genpf/matrix.hpp"
#include "genpf/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace genpf {

using IndexSet = std::vector<std::size_t>;

/// A nonnegative system: n entities regulated by m affectors through a
/// supporter gain matrix and a repressor gain matrix (both n x m).
/// Immutable after construction.
class GainSystem {
 public:
  GainSystem(Matrix<Rational> supporter_gains, Matrix<Rational> repressor_gains);

  /// Splits a signed gain matrix: positive entries are supporter gains,
  /// negative entries (negated) are repressor gains.
  static GainSystem from_signed(const Matrix<Rational>& gains);

  std::size_t entities() const { return supporter_gains_.rows(); }
  std::size_t affectors() const { return supporter_gains_.cols(); }

  const Matrix<Rational>& supporter_gains() const { return supporter_gains_; }
  const Matrix<Rational>& repressor_gains() const { return repressor_gains_; }

  /// Float views, derived on demand.
  Matrix<double> supporter_gains_f() const;
  Matrix<double> repressor_gains_f() const;

  /// S_i = { j : supporter_gains(i,j) > 0 }, ascending.
  const IndexSet& supporters(std::size_t entity) const { return supporters_.at(entity); }
  /// R_i = { j : repressor_gains(i,j) > 0 }, ascending.
  const IndexSet& repressors(std::size_t entity) const { return repressors_.at(entity); }

  /// Signed view: supporter gain minus repressor gain.
  Matrix<Rational> signed_gains() const;

  /// FNV-1a over dimensions and canonical entry text.
  std::uint64_t fingerprint() const { return fingerprint_; }

  friend bool operator==(const GainSystem& a, const GainSystem& b) {
    return a.supporter_gains_ == b.supporter_gains_ && a.repressor_gains_ == b.repressor_gains_;
  }

 private:
  Matrix<Rational> supporter_gains_;
  Matrix<Rational> repressor_gains_;
  std::vector<IndexSet> supporters_;
  std::vector<IndexSet> repressors_;
  std::uint64_t fingerprint_ = 0;
};

/// Largest absolute gain G over both matrices.
struct MaxGain {
  Rational value;
};

MaxGain max_gain(const GainSystem& system);

enum class SystemClass { Square, WeaklySquare, Nonsquare };

std::string to_string(SystemClass tag);

/// A choice of one supporter per determined entity. Entities without an
/// assignment are undetermined (partial selection).
class Selection {
 public:
  /// Throws std::invalid_argument if an assignment is not a supporter of its entity.
  Selection(const GainSystem& source, std::vector<std::optional<std::size_t>> assignments);

  static Selection complete(const GainSystem& source, const std::vector<std::size_t>& affectors);
  static Selection empty(const GainSystem& source);

  std::size_t entities() const { return assignments_.size(); }
  bool is_complete() const;
  std::size_t determined_count() const;
  const std::optional<std::size_t>& operator[](std::size_t entity) const {
    return assignments_.at(entity);
  }
  const std::vector<std::optional<std::size_t>>& assignments() const { return assignments_; }

  /// Affector per entity; throws if the selection is partial.
  std::vector<std::size_t> affectors() const;

  /// Copy with one more entity determined.
  Selection with(const GainSystem& source, std::size_t entity, std::size_t affector) const;

  std::uint64_t source_fingerprint() const { return source_fingerprint_; }

  friend bool operator==(const Selection& a, const Selection& b) {
    return a.source_fingerprint_ == b.source_fingerprint_ && a.assignments_ == b.assignments_;
  }

 private:
  std::vector<std::optional<std::size_t>> assignments_;
  std::uint64_t source_fingerprint_ = 0;
};

/// Result of restricting a system to the affectors kept by a selection.
/// `columns[k]` is the original affector behind column k.
struct SelectedSystem {
  GainSystem system;
  std::vector<std::size_t> columns;
};

/// One violation line per broken invariant; empty iff the system is well formed.
std::vector<std::string> validate(const GainSystem& system);

/// Drops affectors whose supporter column is all zero.
/// Returns the reduced system and the removed (original) indices.
/// Throws Error if every affector would be removed.
std::pair<GainSystem, std::vector<std::size_t>> remove_redundant_affectors(const GainSystem& system);

/// Throws Unclassifiable for shapes outside the three families.
SystemClass classify(const GainSystem& system);

/// Complete selection: n x n system whose column k is the supporter chosen
/// by entity k. Partial selection: the contracted system over the selected
/// affectors plus the full supporter sets of entities no selected affector
/// supports, columns kept in original order.
SelectedSystem apply_selection(const GainSystem& system, const Selection& selection);

/// Affectors kept by `apply_selection`, in column order.
std::vector<std::size_t> retained_affectors(const GainSystem& system, const Selection& selection);

/// Scatters a sub-solution back to length m; unselected affectors get zero.
template <typename T>
std::vector<T> natural_extension(std::span<const T> sub_solution, std::span<const std::size_t> columns,
                                 std::size_t m) {
  if (sub_solution.size() != columns.size()) {
    throw std::invalid_argument("natural_extension: sub-solution length does not match column map");
  }
  std::vector<T> out(m, T(0));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= m) throw std::invalid_argument("natural_extension: column index out of range");
    out[columns[k]] = sub_solution[k];
  }
  return out;
}

/// Complete-selection form: sub-solution entry k belongs to the supporter of entity k.
template <typename T>
std::vector<T> natural_extension(std::span<const T> sub_solution, const Selection& selection,
                                 std::size_t m) {
  const std::vector<std::size_t> columns = selection.affectors();
  return natural_extension<T>(sub_solution, std::span<const std::size_t>(columns), m);
}

template <typename T>
struct Totals {
  std::vector<T> support;
  std::vector<T> repression;
};

/// Total support M+ x and total repression M- x.
Totals<Rational> totals(const GainSystem& system, std::span<const Rational> x);
Totals<double> totals(const GainSystem& system, std::span<const double> x);

/// Number of complete selections, prod |S_i|, saturating at UINT64_MAX.
std::uint64_t selection_count(const GainSystem& system);

/// The `index`-th complete selection in mixed-radix order (entity 0 varies
/// slowest, supporters in ascending order). Requires index < selection_count.
std::vector<std::size_t> nth_selection(const GainSystem& system, std::uint64_t index);

/// Fixtures used across tests, examples and the CLI.
namespace fixtures {
/// Bounded-power counterexample with a = c = 1 and power bound 1.
GainSystem sys_a();
/// Non-log-convexity counterexample (two entities, three affectors).
GainSystem sys_b();
/// Square system S = I, R = [[0,2],[1,0]].
GainSystem sys_c();
/// Reducible 2 x 3 system.
GainSystem sys_d();
}  // namespace fixtures

}  // namespace genpf
