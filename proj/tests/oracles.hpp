#pragma once

// Independent oracles shared by the unit tests. They avoid the library's
// symbolic determinant paths: Hessians are evaluated pointwise through an
// exact numeric matrix, and first-order coefficients come from Lagrange
// interpolation in a scalar parameter.

#include <hessmap/form.hpp>
#include <hessmap/matrix.hpp>
#include <hessmap/random.hpp>

#include <vector>

namespace hessmap::testing {

/// det of the numeric Hessian matrix of f at a point.
inline Rational hessian_at(const Form& f, const std::vector<Rational>& point) {
  const std::size_t n = f.nvars();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = evaluate(partial_derivative(partial_derivative(f, i), j), point);
  return determinant(m);
}

inline std::vector<Rational> random_point(Rng& rng, std::size_t n, long bound = 7) {
  std::vector<Rational> p(n);
  for (auto& v : p) {
    const long num = rng.integer(-bound, bound);
    v = rational(num, rng.integer(1, 3));
  }
  return p;
}

/// d/ds Hess(f + s g) at s = 0 evaluated at a point: Hess(f + s g)(p) is a
/// polynomial of degree <= n in s, so n + 1 samples at s = 0..n determine it.
inline Rational hessian_derivative_at(const Form& f, const Form& g, const std::vector<Rational>& point) {
  const std::size_t n = f.nvars();
  std::vector<Rational> values;
  for (std::size_t s = 0; s <= n; ++s) values.push_back(hessian_at(f + g * Rational(static_cast<long>(s)), point));
  // Derivative at 0 of the Lagrange interpolant through (s, values[s]).
  Rational out = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    // L_i'(0) = sum_{k != i} prod_{j != i, k} (0 - j) / prod_{j != i} (i - j)
    Rational denom = 1;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != i) denom *= Rational(static_cast<long>(i) - static_cast<long>(j));
    Rational numer = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == i) continue;
      Rational prod = 1;
      for (std::size_t j = 0; j <= n; ++j)
        if (j != i && j != k) prod *= Rational(-static_cast<long>(j));
      numer += prod;
    }
    out += values[i] * numer / denom;
  }
  return out;
}

}  // namespace hessmap::testing
