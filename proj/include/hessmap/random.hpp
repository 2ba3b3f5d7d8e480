#pragma once

/// Seeded generators for forms and parameters. Draws use plain modular
/// reduction of mt19937_64 output rather than std distributions, whose
/// algorithms are implementation-defined, so a seed gives the same values on
/// every platform.

#include <hessmap/form.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace hessmap {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  long integer(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }
  long nonzero(long bound) {
    const long v = integer(1, bound);
    return coin() ? v : -v;
  }
  bool coin() { return engine_() & 1; }
  bool chance(unsigned percent) { return engine_() % 100 < percent; }
  std::uint64_t raw() { return engine_(); }

  /// Form with each monomial present with the given probability and small
  /// integer coefficients in [-bound, bound] \ {0}.
  Form form(std::size_t nvars, int degree, unsigned density_percent = 60, long bound = 9) {
    Form f(nvars, degree);
    for (const auto& e : monomial_basis(nvars, degree))
      if (chance(density_percent)) f.accumulate(e, nonzero(bound));
    return f;
  }

  /// Nonzero form; retries until some term is drawn.
  Form nonzero_form(std::size_t nvars, int degree, unsigned density_percent = 60, long bound = 9) {
    while (true) {
      Form f = form(nvars, degree, density_percent, bound);
      if (!f.is_zero()) return f;
    }
  }

  /// Form with exactly `terms` distinct random monomials (capped by the
  /// dimension).
  Form sparse_form(std::size_t nvars, int degree, std::size_t terms, long bound = 9) {
    const auto basis = monomial_basis(nvars, degree);
    Form f(nvars, degree);
    std::size_t guard = 0;
    while (f.size() < std::min(terms, basis.size()) && guard++ < 1000) {
      const auto& e = basis[static_cast<std::size_t>(integer(0, static_cast<long>(basis.size()) - 1))];
      if (f.terms().count(e)) continue;
      f.accumulate(e, nonzero(bound));
    }
    return f;
  }

  /// Invertible matrix with small integer entries.
  RationalMatrix invertible(std::size_t n, long bound = 3) {
    while (true) {
      RationalMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = integer(-bound, bound);
      if (sgn(determinant(m)) != 0) return m;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hessmap
