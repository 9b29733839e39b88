#pragma once

#include "genpf/matrix.hpp"
#include "genpf/rational.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace genpf {

/// Comparison policy for the tableau entries. Exact for rationals,
/// absolute tolerance for doubles.
template <typename T>
struct PivotTraits;

template <>
struct PivotTraits<double> {
  static constexpr double eps = 1e-11;
  static bool positive(double x) { return x > eps; }
  static bool negative(double x) { return x < -eps; }
  static bool zero(double x) { return std::abs(x) <= eps; }
  static double tie_slack() { return eps; }
};

template <>
struct PivotTraits<Rational> {
  static bool positive(const Rational& x) { return sgn(x) > 0; }
  static bool negative(const Rational& x) { return sgn(x) < 0; }
  static bool zero(const Rational& x) { return sgn(x) == 0; }
  static Rational tie_slack() { return Rational(0); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <typename T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;
  T objective = T(0);
  std::size_t pivots = 0;
};

/// minimize c.x subject to A x = b, x >= 0, with b >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule. Columns that are
/// already unit vectors seed the starting basis; remaining rows get an
/// artificial variable.
template <typename T>
class Simplex {
 public:
  Simplex(Matrix<T> a, std::vector<T> b, std::vector<T> c)
      : rows_(a.rows()), vars_(a.cols()), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (b_.size() != rows_ || c_.size() != vars_) throw std::invalid_argument("simplex: dimension mismatch");
    for (const T& v : b_) {
      if (Traits::negative(v)) throw std::invalid_argument("simplex: right-hand side must be nonnegative");
    }
  }

  LpResult<T> solve(std::size_t max_pivots = 100000) {
    LpResult<T> result;
    build_phase_one();
    if (!run(max_pivots, result.pivots)) {
      result.status = LpStatus::IterationLimit;
      return result;
    }
    // Phase-one optimum is the total artificial mass.
    if (Traits::positive(-tableau_(objective_row(), rhs_col()))) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    drive_out_artificials();
    load_objective(c_);
    const Outcome phase_two = iterate(max_pivots, result.pivots);
    if (phase_two == Outcome::Limit) {
      result.status = LpStatus::IterationLimit;
      return result;
    }
    if (phase_two == Outcome::Unbounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Optimal;
    result.x.assign(vars_, T(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!active_[r]) continue;
      if (basis_[r] < vars_) result.x[basis_[r]] = tableau_(r, rhs_col());
    }
    result.objective = -tableau_(objective_row(), rhs_col());
    return result;
  }

 private:
  using Traits = PivotTraits<T>;
  enum class Outcome { Optimal, Unbounded, Limit };

  std::size_t objective_row() const { return rows_; }
  std::size_t rhs_col() const { return total_cols_; }
  bool is_artificial(std::size_t col) const { return col >= vars_; }

  void build_phase_one() {
    basis_.assign(rows_, 0);
    active_.assign(rows_, true);
    std::vector<bool> taken(vars_, false);
    std::vector<std::optional<std::size_t>> seed(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t j = 0; j < vars_ && !seed[r]; ++j) {
        if (taken[j] || a_(r, j) != T(1)) continue;
        bool unit = true;
        for (std::size_t k = 0; k < rows_ && unit; ++k) {
          if (k != r && !Traits::zero(a_(k, j))) unit = false;
        }
        if (unit) {
          seed[r] = j;
          taken[j] = true;
        }
      }
    }
    std::size_t artificials = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!seed[r]) ++artificials;
    }
    total_cols_ = vars_ + artificials;
    tableau_ = Matrix<T>(rows_ + 1, total_cols_ + 1);
    std::size_t next_art = vars_;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t j = 0; j < vars_; ++j) tableau_(r, j) = a_(r, j);
      tableau_(r, rhs_col()) = b_[r];
      if (seed[r]) {
        basis_[r] = *seed[r];
      } else {
        tableau_(r, next_art) = T(1);
        basis_[r] = next_art++;
      }
    }
    // Phase-one cost: sum of artificials, expressed in nonbasic terms.
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j <= total_cols_; ++j) {
        if (!is_artificial(j) || j == rhs_col()) tableau_(objective_row(), j) -= tableau_(r, j);
      }
    }
  }

  void load_objective(const std::vector<T>& cost) {
    for (std::size_t j = 0; j <= total_cols_; ++j) tableau_(objective_row(), j) = T(0);
    for (std::size_t j = 0; j < vars_; ++j) tableau_(objective_row(), j) = cost[j];
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!active_[r]) continue;
      const T weight = tableau_(objective_row(), basis_[r]);
      if (Traits::zero(weight)) continue;
      for (std::size_t j = 0; j <= total_cols_; ++j) tableau_(objective_row(), j) -= weight * tableau_(r, j);
    }
    phase_two_ = true;
  }

  bool run(std::size_t max_pivots, std::size_t& pivots) {
    return iterate(max_pivots, pivots) != Outcome::Limit;
  }

  Outcome iterate(std::size_t max_pivots, std::size_t& pivots) {
    while (true) {
      // Bland: lowest-index column with negative reduced cost.
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < total_cols_; ++j) {
        if (phase_two_ && is_artificial(j)) continue;
        if (Traits::negative(tableau_(objective_row(), j))) {
          entering = j;
          break;
        }
      }
      if (!entering) return Outcome::Optimal;

      // Minimum ratio; ties go to the lowest basic variable index.
      std::optional<std::size_t> leaving;
      T best_ratio{};
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!active_[r] || !Traits::positive(tableau_(r, *entering))) continue;
        T ratio = tableau_(r, rhs_col()) / tableau_(r, *entering);
        const T slack = Traits::tie_slack();
        if (!leaving || ratio < best_ratio - slack ||
            (!(ratio > best_ratio + slack) && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) return Outcome::Unbounded;
      if (pivots >= max_pivots) return Outcome::Limit;
      pivot(*leaving, *entering);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const T p = tableau_(row, col);
    for (std::size_t j = 0; j <= total_cols_; ++j) tableau_(row, j) /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == row || (r < rows_ && !active_[r])) continue;
      const T factor = tableau_(r, col);
      if (Traits::zero(factor)) {
        if constexpr (std::is_same_v<T, double>) tableau_(r, col) = 0.0;
        continue;
      }
      for (std::size_t j = 0; j <= total_cols_; ++j) tableau_(r, j) -= factor * tableau_(row, j);
      if constexpr (std::is_same_v<T, double>) tableau_(r, col) = 0.0;
    }
    basis_[row] = col;
  }

  /// After a successful phase one, artificials still basic sit at level
  /// zero; pivot them out or retire their (redundant) rows.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < vars_ && !col; ++j) {
        if (!Traits::zero(tableau_(r, j))) col = j;
      }
      if (col) {
        pivot(r, *col);
      } else {
        active_[r] = false;
      }
    }
  }

  std::size_t rows_;
  std::size_t vars_;
  Matrix<T> a_;
  std::vector<T> b_;
  std::vector<T> c_;
  Matrix<T> tableau_;
  std::size_t total_cols_ = 0;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  bool phase_two_ = false;
};

}  // namespace genpf
