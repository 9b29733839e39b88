#include "genpf/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace genpf {

Matrix<Rational> z_matrix(const GainSystem& square_system) {
  const std::size_t n = square_system.entities();
  if (square_system.affectors() != n) throw std::invalid_argument("z_matrix needs a square system");
  const auto& s = square_system.supporter_gains();
  const auto& r = square_system.repressor_gains();
  Matrix<Rational> z(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s(i, i) == 0) throw Error("zero supporter gain on the diagonal at entity " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && s(i, j) != 0) throw std::invalid_argument("supporter matrix is not diagonal");
      z(i, j) = r(i, j) / s(i, i);
    }
  }
  return z;
}

namespace {

double residual_of(const Matrix<double>& z, const std::vector<double>& v, double root) {
  double worst = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < z.cols(); ++j) acc += z(i, j) * v[j];
    worst = std::max(worst, std::abs(acc - root * v[i]));
  }
  return worst;
}

/// For v >= 0 with ||v||_1 = 1, ||Z v||_1 is the natural root estimate.
double root_estimate(const Matrix<double>& z, const std::vector<double>& v) {
  double total = 0.0;
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) total += z(i, j) * v[j];
  return total;
}

/// Every index reaches every other through positive off-diagonal entries.
bool pattern_irreducible(const Matrix<double>& z) {
  const std::size_t n = z.rows();
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = pass == 0 ? z(i, j) : z(j, i);
        if (w > 0.0 && !seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
  }
  return true;
}

bool normalise_positive(std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  if (!std::isfinite(sum) || sum == 0.0) return false;
  for (double& x : v) x /= sum;
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && x > 0.0; });
}

/// A few inverse-iteration steps with shift `shift`; returns false if the
/// iterate leaves the positive orthant.
bool inverse_polish(const Matrix<double>& z, std::vector<double>& v, double shift) {
  const Eigen::Index n = static_cast<Eigen::Index>(z.rows());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = z(i, j) - (i == j ? shift : 0.0);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(v.data(), n);
  for (int step = 0; step < 3; ++step) {
    y = lu.solve(y);
    if (!y.allFinite()) return false;
    if (y.sum() < 0) y = -y;
    y /= y.sum();
  }
  std::vector<double> candidate(y.data(), y.data() + n);
  if (!normalise_positive(candidate)) return false;
  v = std::move(candidate);
  return true;
}

/// Shifted inverse steps just above the converged root; kept while the residual drops.
void refine(const Matrix<double>& z, SquarePfResult& best) {
  for (int round = 0; round < 4; ++round) {
    std::vector<double> v = best.vector;
    const double shift = best.root + 1e-10 * std::max(1.0, best.root);
    if (!inverse_polish(z, v, shift)) return;
    const double root = root_estimate(z, v);
    const double residual = residual_of(z, v, root);
    if (!(residual < best.residual)) return;
    best.root = root;
    best.vector = std::move(v);
    best.residual = residual;
  }
}

}  // namespace

SquarePfResult pf_root_vector(const Matrix<double>& z, double tol, std::size_t max_iter) {
  const std::size_t n = z.rows();
  if (n == 0 || z.cols() != n) throw std::invalid_argument("pf_root_vector needs a nonempty square matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(z(i, j) >= 0.0) || !std::isfinite(z(i, j))) throw std::invalid_argument("matrix must be nonnegative and finite");
  if (!pattern_irreducible(z)) throw std::invalid_argument("matrix is not irreducible");
  if (max_iter == 0) {
    max_iter = static_cast<std::size_t>(std::ceil(100.0 * static_cast<double>(n) * std::log(1.0 / std::min(tol, 0.5))));
  }

  SquarePfResult best;
  best.vector.assign(n, 1.0 / static_cast<double>(n));
  best.root = root_estimate(z, best.vector);
  best.residual = residual_of(z, best.vector, best.root);

  std::vector<double> v = best.vector;
  std::vector<double> w(n);
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    // w = (Z + I) v
    for (std::size_t i = 0; i < n; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < n; ++j) acc += z(i, j) * v[j];
      w[i] = acc;
    }
    v = w;
    if (!normalise_positive(v)) {
      // Zero rows can leave zeros behind only for reducible input.
      throw std::invalid_argument("power iteration left the positive orthant; matrix is not irreducible");
    }

    if (iter % 64 == 0 && best.residual > tol * std::max(1.0, best.root)) {
      std::vector<double> polished = v;
      const double shift = root_estimate(z, v) * (1.0 + 1e-9) + 1e-300;
      if (inverse_polish(z, polished, shift)) {
        const double r = root_estimate(z, polished);
        if (residual_of(z, polished, r) < residual_of(z, v, root_estimate(z, v))) v = polished;
      }
    }

    const double root = root_estimate(z, v);
    const double residual = residual_of(z, v, root);
    if (residual < best.residual || iter == 1) {
      best.root = root;
      best.vector = v;
      best.residual = residual;
    }
    best.iterations = iter;
    if (best.residual <= tol * std::max(1.0, best.root)) {
      refine(z, best);
      return best;
    }
  }
  throw PfNotConverged("max_iter exceeded: residual " + std::to_string(best.residual) + " after " +
                           std::to_string(best.iterations) + " iterations",
                       best);
}

double collatz_wielandt_ratio(const GainSystem& system, std::span<const double> x) {
  for (double xi : x) {
    if (xi < 0) throw std::invalid_argument("collatz_wielandt_ratio needs x >= 0");
  }
  const Totals<double> t = totals(system, x);
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    if (t.support[i] == 0.0) continue;
    any = true;
    best = std::max(best, t.repression[i] / t.support[i]);
  }
  if (!any) throw Error("total support is zero for every entity");
  return best;
}

Rational collatz_wielandt_ratio(const GainSystem& system, std::span<const Rational> x) {
  for (const Rational& xi : x) {
    if (xi < 0) throw std::invalid_argument("collatz_wielandt_ratio needs x >= 0");
  }
  const Totals<Rational> t = totals(system, x);
  std::optional<Rational> best;
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    if (t.support[i] == 0) continue;
    Rational ratio = t.repression[i] / t.support[i];
    if (!best || ratio > *best) best = ratio;
  }
  if (!best) throw Error("total support is zero for every entity");
  return *best;
}

// ---------------------------------------------------------------------------
// Exact path

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (const Rational& c : coefficients) acc = acc * t + c;
  return acc;
}

double Polynomial::operator()(double t) const {
  double acc = 0;
  for (const Rational& c : coefficients) acc = acc * t + c.get_d();
  return acc;
}

std::string Polynomial::to_string(const std::string& variable) const {
  std::ostringstream out;
  bool first = true;
  const std::size_t deg = degree();
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Rational& c = coefficients[k];
    if (c == 0) continue;
    const std::size_t power = deg - k;
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (magnitude != 1 || power == 0) out << genpf::to_string(magnitude);
    if (power > 0) {
      if (magnitude != 1) out << "*";
      out << variable;
      if (power > 1) out << "^" << power;
    }
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

Rational determinant(Matrix<Rational> z) {
  const std::size_t n = z.rows();
  if (z.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  Rational previous_pivot = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (z(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && z(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(z(k, j), z(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        z(i, j) = (z(i, j) * z(k, k) - z(i, k) * z(k, j)) / previous_pivot;
      }
      z(i, k) = 0;
    }
    previous_pivot = z(k, k);
  }
  Rational det = z(n - 1, n - 1);
  return sign < 0 ? Rational(-det) : det;
}

Polynomial characteristic_polynomial(const Matrix<Rational>& z) {
  const std::size_t n = z.rows();
  if (z.cols() != n) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  // Coefficient of t^(n-k) is (-1)^k times the sum of the k x k principal minors.
  Polynomial p;
  p.coefficients.assign(n + 1, Rational(0));
  p.coefficients[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Matrix<Rational> minor(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) minor(a, b) = z(idx[a], idx[b]);
    const Rational d = determinant(std::move(minor));
    const std::size_t k = idx.size();
    if (k % 2 == 0) p.coefficients[k] += d;
    else p.coefficients[k] -= d;
  }
  return p;
}

namespace {

using Coeffs = std::vector<Rational>;  // highest degree first, no leading zeros

void trim(Coeffs& p) {
  std::size_t lead = 0;
  while (lead + 1 < p.size() && p[lead] == 0) ++lead;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
}

bool is_zero(const Coeffs& p) { return p.size() == 1 && p[0] == 0; }

Coeffs derivative(const Coeffs& p) {
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return {Rational(0)};
  Coeffs d(deg);
  for (std::size_t k = 0; k < deg; ++k) d[k] = p[k] * static_cast<unsigned long>(deg - k);
  return d;
}

/// Polynomial long division; returns {quotient, remainder}.
std::pair<Coeffs, Coeffs> divide(Coeffs num, const Coeffs& den) {
  if (is_zero(den)) throw std::invalid_argument("polynomial division by zero");
  if (num.size() < den.size()) return {{Rational(0)}, num};
  Coeffs quotient(num.size() - den.size() + 1, Rational(0));
  for (std::size_t k = 0; k < quotient.size(); ++k) {
    const Rational factor = num[k] / den[0];
    quotient[k] = factor;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= factor * den[j];
  }
  Coeffs rem(num.end() - static_cast<std::ptrdiff_t>(den.size() - 1), num.end());
  if (rem.empty()) rem.push_back(0);
  trim(rem);
  return {quotient, rem};
}

Coeffs gcd(Coeffs a, Coeffs b) {
  while (!is_zero(b)) {
    Coeffs r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  const Rational lead = a[0];
  for (Rational& c : a) c /= lead;
  return a;
}

int sign_of(const Rational& value) { return sgn(value); }

Rational evaluate(const Coeffs& p, const Rational& t) {
  Rational acc = 0;
  for (const Rational& c : p) acc = acc * t + c;
  return acc;
}

std::vector<Coeffs> sturm_chain(const Coeffs& squarefree) {
  std::vector<Coeffs> chain{squarefree, derivative(squarefree)};
  trim(chain.back());
  while (!is_zero(chain.back()) && chain.back().size() > 1) {
    Coeffs r = divide(chain[chain.size() - 2], chain.back()).second;
    for (Rational& c : r) c = -c;
    if (is_zero(r)) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes(const std::vector<Coeffs>& chain, const Rational& t) {
  int changes = 0;
  int last = 0;
  for (const Coeffs& p : chain) {
    const int s = sign_of(evaluate(p, t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

RootInterval largest_real_root(const Polynomial& poly, const Rational& precision) {
  if (!(precision > 0)) throw std::invalid_argument("precision must be positive");
  Coeffs p = poly.coefficients;
  if (p.empty()) throw Error("empty polynomial");
  trim(p);
  if (p.size() < 2) throw Error("constant polynomial has no roots");

  Coeffs squarefree = divide(p, gcd(p, derivative(p))).first;
  trim(squarefree);
  const auto chain = sturm_chain(squarefree);

  // Cauchy bound: every root lies strictly inside (-bound, bound).
  Rational bound = 0;
  for (std::size_t k = 1; k < p.size(); ++k) bound = std::max(bound, Rational(abs(p[k] / p[0])));
  bound += 1;

  Rational lo = -bound;
  Rational hi = bound;
  const int at_hi = sign_changes(chain, hi);
  if (sign_changes(chain, lo) - at_hi < 1) throw Error("polynomial has no real root");
  // Invariant: the largest root lies in (lo, hi].
  while (hi - lo > precision) {
    Rational mid = (lo + hi) / 2;
    if (sign_changes(chain, mid) - at_hi >= 1) lo = mid;
    else hi = mid;
  }
  return RootInterval{lo, hi};
}

ExactRoot char_poly_root_exact(const Matrix<Rational>& z, const Rational& precision, std::size_t limit) {
  if (z.rows() > limit) {
    throw Error("exact characteristic polynomial limited to n <= " + std::to_string(limit) + ", got n = " +
                std::to_string(z.rows()));
  }
  ExactRoot out;
  out.characteristic = characteristic_polynomial(z);
  out.root = largest_real_root(out.characteristic, precision);
  return out;
}

}  // namespace genpf
