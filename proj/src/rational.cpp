#include "genpf/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace genpf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) {
      throw std::invalid_argument("malformed exponent in number '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }

  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    digits = std::string(s);
  }

  Rational value(mpz_class(digits, 10));
  if (exponent > 0) {
    value *= pow10(static_cast<unsigned long>(exponent));
  } else if (exponent < 0) {
    value /= pow10(static_cast<unsigned long>(-exponent));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+')) {
      num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    mpz_class n(std::string(num_digits), 10);
    if (num.front() == '-') n = -n;
    Rational value(n, d);
    value.canonicalize();
    return value;
  }
  return parse_decimal(text);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite number");
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format number");
  return parse_decimal(std::string_view(buffer, static_cast<std::size_t>(end - buffer)));
}

Rational rational_from_double_exact(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite number");
  Rational result(value);
  return result;
}

Rational best_rational_approximation(double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite number");
  if (max_denominator == 0) throw std::invalid_argument("max_denominator must be positive");

  const Rational target = rational_from_double_exact(value);
  const bool negative = target < 0;
  Rational x = negative ? Rational(-target) : target;

  // Convergents p_k/q_k of the continued fraction of x.
  mpz_class p_prev = 0, q_prev = 1, p = 1, q = 0;
  Rational rest = x;
  const mpz_class limit = mpz_class(std::to_string(max_denominator), 10);
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class p_next = a * p + p_prev;
    mpz_class q_next = a * q + q_prev;
    if (q_next > limit) {
      // Largest semiconvergent still inside the denominator bound.
      mpz_class k = (limit - q_prev) / q;
      Rational semi(k * p + p_prev, k * q + q_prev);
      Rational conv(p, q);
      semi.canonicalize();
      conv.canonicalize();
      Rational best = abs(semi - x) < abs(conv - x) ? semi : conv;
      return negative ? Rational(-best) : best;
    }
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  Rational exact(p, q);
  exact.canonicalize();
  return negative ? Rational(-exact) : exact;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace genpf
