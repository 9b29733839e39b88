#include "genpf/feasibility.hpp"

#include "genpf/error.hpp"
#include "genpf/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace genpf {

std::string to_string(ArithmeticMode mode) {
  switch (mode) {
    case ArithmeticMode::Float: return "float";
    case ArithmeticMode::Exact: return "exact";
    case ArithmeticMode::Auto: return "auto";
  }
  return "unknown";
}

namespace {

template <typename T>
struct MinMaxOutcome {
  bool solved = false;
  std::vector<T> x;
  /// min over the simplex of max_i ((beta M- - M+) x)_i
  T t = T(0);
};

/// Columns: x (m), t+ , t-, slack (n). Rows: n SR rows, then sum x = 1.
template <typename T>
MinMaxOutcome<T> solve_min_max(const GainSystem& system, const Rational& beta) {
  const std::size_t n = system.entities();
  const std::size_t m = system.affectors();
  const std::size_t cols = m + 2 + n;
  const T b = scalar_cast<T>(beta);
  Matrix<T> a(n + 1, cols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      a(i, j) = b * scalar_cast<T>(system.repressor_gains()(i, j)) - scalar_cast<T>(system.supporter_gains()(i, j));
    }
    a(i, m) = T(-1);
    a(i, m + 1) = T(1);
    a(i, m + 2 + i) = T(1);
  }
  for (std::size_t j = 0; j < m; ++j) a(n, j) = T(1);
  std::vector<T> rhs(n + 1, T(0));
  rhs[n] = T(1);
  std::vector<T> cost(cols, T(0));
  cost[m] = T(1);
  cost[m + 1] = T(-1);

  Simplex<T> lp(std::move(a), std::move(rhs), std::move(cost));
  LpResult<T> r = lp.solve();
  MinMaxOutcome<T> out;
  if (r.status != LpStatus::Optimal) return out;
  out.solved = true;
  out.x.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(m));
  out.t = r.objective;
  return out;
}

std::vector<double> normalised(std::vector<double> x) {
  double sum = 0.0;
  for (double& v : x) {
    v = std::max(v, 0.0);
    sum += v;
  }
  if (sum > 0.0) {
    for (double& v : x) v /= sum;
  }
  return x;
}

/// Exact L1 normalisation of the binary values; nullopt if the witness
/// violates any SR constraint exactly.
std::optional<std::vector<Rational>> certify(const GainSystem& system, const std::vector<double>& x,
                                             const Rational& beta) {
  std::vector<Rational> q(x.size());
  Rational sum = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    q[j] = rational_from_double_exact(std::max(x[j], 0.0));
    sum += q[j];
  }
  if (sum == 0) return std::nullopt;
  for (Rational& v : q) v /= sum;
  const std::vector<Rational> res = residuals(system, q, beta);
  if (std::any_of(res.begin(), res.end(), [](const Rational& r) { return sgn(r) < 0; })) return std::nullopt;
  return q;
}

FeasibilityVerdict exact_verdict(const GainSystem& system, const Rational& beta) {
  MinMaxOutcome<Rational> lp = solve_min_max<Rational>(system, beta);
  if (!lp.solved) throw Error("exact simplex failed to reach an optimum");
  FeasibilityVerdict v;
  v.mode = ArithmeticMode::Exact;
  v.feasible = sgn(lp.t) <= 0;
  v.witness.resize(lp.x.size());
  for (std::size_t j = 0; j < lp.x.size(); ++j) v.witness[j] = lp.x[j].get_d();
  v.max_violation = sgn(lp.t) > 0 ? Rational(lp.t / beta).get_d() : 0.0;
  if (v.feasible) v.exact_witness = std::move(lp.x);
  return v;
}

}  // namespace

FeasibilityVerdict feasible(const GainSystem& system, const Rational& beta, ArithmeticMode mode) {
  if (sgn(beta) <= 0) throw std::invalid_argument("beta must be positive");
  if (auto violations = validate(system); !violations.empty()) {
    throw std::invalid_argument("invalid system: " + violations.front());
  }
  if (mode == ArithmeticMode::Exact) return exact_verdict(system, beta);

  const MinMaxOutcome<double> lp = solve_min_max<double>(system, beta);
  if (!lp.solved || !std::isfinite(lp.t)) {
    if (mode == ArithmeticMode::Float) throw Error("float simplex failed to reach an optimum");
    return exact_verdict(system, beta);
  }
  const double beta_f = beta.get_d();
  const double scaled = lp.t / beta_f;

  FeasibilityVerdict v;
  v.mode = ArithmeticMode::Float;
  v.witness = normalised(lp.x);
  if (mode == ArithmeticMode::Float) {
    v.feasible = scaled <= kFloatFeasibilityTolerance;
    v.max_violation = std::max(scaled, 0.0);
    return v;
  }

  if (scaled > kFloatFeasibilityTolerance) {
    v.feasible = false;
    v.max_violation = scaled;
    return v;
  }
  if (scaled < -kFloatFeasibilityTolerance) {
    if (auto exact = certify(system, v.witness, beta)) {
      v.feasible = true;
      v.exact_witness = std::move(exact);
      return v;
    }
  }
  return exact_verdict(system, beta);
}

std::vector<Rational> residuals(const GainSystem& system, std::span<const Rational> x, const Rational& beta) {
  if (sgn(beta) <= 0) throw std::invalid_argument("beta must be positive");
  const Totals<Rational> t = totals(system, x);
  std::vector<Rational> out(t.support.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t.support[i] / beta - t.repression[i];
  return out;
}

std::vector<double> residuals(const GainSystem& system, std::span<const double> x, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const Totals<double> t = totals(system, x);
  std::vector<double> out(t.support.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t.support[i] / beta - t.repression[i];
  return out;
}

}  // namespace genpf
