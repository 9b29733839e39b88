#pragma once

#include "genpf/rational.hpp"
#include "genpf/system.hpp"

#include <initializer_list>
#include <vector>

namespace testing {

inline genpf::Matrix<genpf::Rational> q(std::initializer_list<std::initializer_list<const char*>> values) {
  std::vector<std::vector<genpf::Rational>> out;
  for (const auto& row : values) {
    std::vector<genpf::Rational> r;
    for (const char* v : row) r.push_back(genpf::parse_rational(v));
    out.push_back(std::move(r));
  }
  return genpf::Matrix<genpf::Rational>::from_rows(out);
}

inline genpf::Rational r(const char* text) { return genpf::parse_rational(text); }

/// Canonical a/b (gmp leaves constructed fractions unreduced).
inline genpf::Rational frac(long a, long b) {
  genpf::Rational v(a, b);
  v.canonicalize();
  return v;
}

}  // namespace testing
