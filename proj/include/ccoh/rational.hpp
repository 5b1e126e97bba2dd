#pragma once
/// @file rational.hpp
/// @brief Exact rational scalars: arbitrary-precision fractions in lowest
///        terms, plus the generalized binomial coefficient used by the
///        bracket structure constants.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ccoh {

/// Exact rational number. Always canonical: lowest terms, denominator > 0.
using Rational = mpq_class;

/// Builds a canonical rational n/d.
[[nodiscard]] inline Rational rat(long n, long d = 1) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// n! as an exact rational (n must be non-negative).
[[nodiscard]] inline Rational factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  Rational r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Generalized binomial coefficient: m(m-1)...(m-s+1)/s! for s >= 0, else 0.
/// m may be any integer; the product vanishes when 0 <= m < s.
[[nodiscard]] inline Rational binomial(long m, long s) {
  if (s < 0) return 0;
  Rational num = 1;
  for (long i = 0; i < s; ++i) num *= (m - i);
  return num / factorial(s);
}

/// Canonical text form: "a/b", or "a" when the denominator is 1.
[[nodiscard]] inline std::string rat_to_string(const Rational& r) {
  return r.get_str();
}

/// Parses "a/b" or "a" (optionally signed) into a canonical rational.
[[nodiscard]] inline Rational rat_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace ccoh
