#pragma once

#include "genpf/error.hpp"
#include "genpf/matrix.hpp"
#include "genpf/rational.hpp"
#include "genpf/system.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace genpf {

/// Z = (M+)^-1 M- for a square system in canonical order (diagonal M+).
/// Throws Error on a zero diagonal entry, std::invalid_argument if M+ is
/// not square and diagonal.
Matrix<Rational> z_matrix(const GainSystem& square_system);

struct SquarePfResult {
  double root = 0.0;
  /// Positive, L1-normalised.
  std::vector<double> vector;
  std::size_t iterations = 0;
  /// max_i |(Z v)_i - root * v_i|
  double residual = 0.0;
};

class PfNotConverged : public Error {
 public:
  PfNotConverged(std::string what, SquarePfResult best) : Error(std::move(what)), best_(std::move(best)) {}
  const SquarePfResult& best() const { return best_; }

 private:
  SquarePfResult best_;
};

inline constexpr double kDefaultPfTolerance = 1e-12;

/// Perron root and vector of a nonnegative irreducible matrix by power
/// iteration on Z + I (primitive, so the iteration cannot cycle), with
/// occasional inverse-iteration polishing. Stops once the residual is at most
/// tol * max(1, root). `max_iter == 0` selects 100 * n * ln(1/tol).
/// Throws PfNotConverged carrying the best iterate.
SquarePfResult pf_root_vector(const Matrix<double>& z, double tol = kDefaultPfTolerance,
                              std::size_t max_iter = 0);

/// max over entities with nonzero support of repression / support.
/// Throws Error if the total support vanishes everywhere.
double collatz_wielandt_ratio(const GainSystem& system, std::span<const double> x);
Rational collatz_wielandt_ratio(const GainSystem& system, std::span<const Rational> x);

/// Dense polynomial with exact coefficients, highest degree first.
struct Polynomial {
  std::vector<Rational> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  Rational operator()(const Rational& t) const;
  double operator()(double t) const;
  std::string to_string(const std::string& variable = "t") const;
};

/// Largest real root r of a polynomial, isolated as lower < r <= upper.
struct RootInterval {
  Rational lower;
  Rational upper;
  Rational width() const { return Rational(upper - lower); }
  double midpoint() const { return Rational((lower + upper) / 2).get_d(); }
  bool contains(double value, double slack = 0.0) const {
    return value >= lower.get_d() - slack && value <= upper.get_d() + slack;
  }
};

struct ExactRoot {
  Polynomial characteristic;
  RootInterval root;
};

inline constexpr std::size_t kExactDegreeLimit = 4;

/// det(z) by fraction-free (Bareiss) elimination with exact rationals.
Rational determinant(Matrix<Rational> z);

/// det(t I - z), monic.
Polynomial characteristic_polynomial(const Matrix<Rational>& z);

/// Largest real root of `p` by Sturm-sequence bisection, isolated to width <= precision.
/// Throws Error if `p` has no real root.
RootInterval largest_real_root(const Polynomial& p, const Rational& precision);

/// Characteristic polynomial of z and an isolating interval for its largest
/// real root. Throws Error when z is larger than `limit`.
ExactRoot char_poly_root_exact(const Matrix<Rational>& z, const Rational& precision,
                               std::size_t limit = kExactDegreeLimit);

}  // namespace genpf
