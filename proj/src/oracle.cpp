#include "genpf/oracle.hpp"

#include "genpf/error.hpp"
#include "genpf/irreducibility.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace genpf {

bool OracleResult::is_optimal(const std::vector<std::size_t>& selection) const {
  return std::any_of(optimal.begin(), optimal.end(), [&](std::size_t k) { return table[k].selection == selection; });
}

namespace {

SelectionRoot solve_selection(const GainSystem& system, std::vector<std::size_t> selection) {
  if (!is_irreducible_selection(system, selection)) {
    throw Error("reducible selection encountered; the system is not irreducible");
  }
  const SelectedSystem square = apply_selection(system, Selection::complete(system, selection));
  const Matrix<Rational> z = z_matrix(square.system);
  SelectionRoot row;
  row.selection = std::move(selection);
  if (z.rows() <= kExactDegreeLimit) {
    const Rational precision(mpz_class(1), mpz_class(1) << 96);
    const ExactRoot er = char_poly_root_exact(z, precision);
    row.root = er.root.midpoint();
    row.exact = er.root;
  } else {
    row.root = pf_root_vector(z.map<double>([](const Rational& q) { return q.get_d(); })).root;
  }
  return row;
}

}  // namespace

OracleResult enumerate_solve(const GainSystem& system, std::uint64_t budget, unsigned threads) {
  const std::uint64_t count = selection_count(system);
  if (count > budget) throw BudgetExceeded(count, budget);

  OracleResult result;
  result.enumerated = count;
  result.table.resize(count);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));

  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&](unsigned worker) {
    try {
      for (std::uint64_t k = worker; k < count; k += threads) {
        result.table[k] = solve_selection(system, nth_selection(system, k));
      }
    } catch (...) {
      const std::lock_guard<std::mutex> guard(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (count == 0) throw Error("system has no complete selection");

  std::size_t argmin = 0;
  for (std::size_t k = 1; k < result.table.size(); ++k) {
    if (result.table[k].root < result.table[argmin].root) argmin = k;
  }
  result.best_root = result.table[argmin].root;
  result.best_beta = 1.0 / result.best_root;
  for (std::size_t k = 0; k < result.table.size(); ++k) {
    const double gap = result.table[k].root - result.best_root;
    if (gap <= kOracleTieTolerance * std::max(1.0, result.best_root)) result.optimal.push_back(k);
  }
  return result;
}

}  // namespace genpf
