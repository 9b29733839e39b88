#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace genpf {

/// Exact rational scalar used for gain entries and exact-mode LP pivoting.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal ("-2.5e-3") exactly.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact value of the shortest decimal text that round-trips `value`,
/// so 0.1 becomes 1/10 instead of the binary expansion of the double.
Rational rational_from_double(double value);

/// Exact binary value of `value` (every finite double is a dyadic rational).
Rational rational_from_double_exact(double value);

/// Closest rational with denominator at most `max_denominator`
/// (continued-fraction convergents plus the best semiconvergent).
Rational best_rational_approximation(double value, std::uint64_t max_denominator);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

/// Scalar conversion used by templates that run in either float or exact mode.
template <typename T>
T scalar_cast(const Rational& value);

template <>
inline double scalar_cast<double>(const Rational& value) {
  return value.get_d();
}

template <>
inline Rational scalar_cast<Rational>(const Rational& value) {
  return value;
}

}  // namespace genpf
