#pragma once

/// Exact rational scalars.
///
/// GMP's mpq_class keeps every value canonical (lowest terms, positive
/// denominator, zero as 0/1), which is the only scalar type used by the
/// library core.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hessmap {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n" or "n/d" (d > 0). Non-canonical input such as "2/4" is
/// accepted and reduced.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  if (text.front() == '-') q = -q;
  return q;
}

/// Canonical fraction string: "-2/3", "1", "0".
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact power with a non-negative integer exponent.
inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline Integer ipow(long base, unsigned exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), exponent);
  if (base < 0 && exponent % 2 == 1) out = -out;
  return out;
}

inline Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace hessmap
