#include <hessmap/harmonic.hpp>
#include <hessmap/random.hpp>

#include <gtest/gtest.h>

namespace hessmap {
namespace {

// Plain sum of second partials, written independently of the library's
// dual-Gram operator.
Form euclidean_laplacian(const Form& f) {
  Form out(f.nvars(), f.degree() - 2);
  for (std::size_t i = 0; i < f.nvars(); ++i) out += partial_derivative(partial_derivative(f, i), i);
  return out;
}

TEST(QuadraticForm, HyperbolicAndSumOfSquares) {
  const auto h = QuadraticForm::hyperbolic(3);
  const Form x0 = Form::variable(3, 0), x1 = Form::variable(3, 1), x2 = Form::variable(3, 2);
  EXPECT_EQ(h.polynomial(), x0 * x1 + x2 * x2);
  EXPECT_EQ(QuadraticForm::sum_of_squares(3).polynomial(), x0 * x0 + x1 * x1 + x2 * x2);
  EXPECT_EQ(QuadraticForm::from_polynomial(h.polynomial()).gram(), h.gram());
  EXPECT_EQ(h.gram() * h.dual_gram(), RationalMatrix::identity(3));
}

TEST(Laplacian, MatchesEuclideanForSumOfSquares) {
  Rng rng(21);
  const auto q = QuadraticForm::sum_of_squares(4);
  for (int s = 0; s < 20; ++s) {
    const Form f = rng.form(4, static_cast<int>(rng.integer(2, 5)));
    const Form lap = laplacian_q(f, q);
    // Same operator up to a fixed positive normalisation.
    const Form ref = euclidean_laplacian(f);
    if (ref.is_zero()) {
      EXPECT_TRUE(lap.is_zero());
      continue;
    }
    const auto& [e, c] = *ref.terms().begin();
    EXPECT_EQ(lap, ref * (lap.coefficient(e) / c));
    EXPECT_GT(lap.coefficient(e) / c, 0);
  }
}

TEST(HarmonicBasis, DimensionsMatchFormula) {
  for (std::size_t n = 2; n <= 4; ++n)
    for (int d = 0; d <= 6; ++d) {
      const auto expected = sym_dimension(n, d) - sym_dimension(n, d - 2);
      EXPECT_EQ(harmonic_dimension(n, d), expected);
      EXPECT_EQ(harmonic_basis(d, QuadraticForm::hyperbolic(n)).size(), expected) << n << " " << d;
      EXPECT_EQ(harmonic_basis(d, QuadraticForm::sum_of_squares(n)).size(), expected) << n << " " << d;
    }
}

// Property: the decomposition recombines to the input and every summand is
// harmonic, for both quadratic forms.
TEST(HarmonicProperty, DecompositionRoundTrip) {
  Rng rng(22);
  for (int s = 0; s < 40; ++s) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 4));
    const auto q = s % 2 ? QuadraticForm::hyperbolic(n) : QuadraticForm::sum_of_squares(n);
    const Form f = rng.form(n, static_cast<int>(rng.integer(0, 6)));
    const auto dec = harmonic_decompose(f, q);
    EXPECT_EQ(dec.recombine(q), f);
    EXPECT_EQ(dec.summands.size(), static_cast<std::size_t>(f.degree() / 2 + 1));
    for (const auto& h : dec.summands)
      if (h.degree() >= 2) {
        EXPECT_TRUE(laplacian_q(h, q).is_zero());
      }
  }
}

// q^j times a harmonic form of degree i has Laplacian 2j(2j + 2i + n - 2)
// q^(j-1) h for the sum of squares: a classical identity used as the oracle.
TEST(HarmonicProperty, LaplacianOfQPowerTimesHarmonic) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto q = QuadraticForm::sum_of_squares(n);
    for (int i = 0; i <= 3; ++i)
      for (const Form& h : harmonic_basis(i, q))
        for (int j = 1; j <= 3; ++j) {
          const Form lhs = euclidean_laplacian(pow(q.polynomial(), j) * h);
          const long c = 2L * j * (2 * j + 2 * i + static_cast<long>(n) - 2);
          EXPECT_EQ(lhs, pow(q.polynomial(), j - 1) * h * Rational(c));
        }
  }
}

TEST(HarmonicProperty, DecompositionShiftsUnderQ) {
  Rng rng(23);
  const auto q = QuadraticForm::hyperbolic(3);
  for (int s = 0; s < 10; ++s) {
    const Form f = rng.form(3, static_cast<int>(rng.integer(0, 4)));
    const auto a = harmonic_decompose(f, q);
    const auto b = harmonic_decompose(q.polynomial() * f, q);
    ASSERT_EQ(b.summands.size(), a.summands.size() + 1);
    EXPECT_TRUE(b.summands.front().is_zero());
    for (std::size_t i = 0; i < a.summands.size(); ++i) EXPECT_EQ(b.summands[i + 1], a.summands[i]);
  }
}

// Harmonic forms are orthogonal to q * Sym^(d-2) for the Bombieri-Weyl pairing.
TEST(HarmonicProperty, BombieriWeylOrthogonality) {
  Rng rng(24);
  const auto q = QuadraticForm::sum_of_squares(3);
  for (int d = 2; d <= 5; ++d)
    for (const Form& h : harmonic_basis(d, q))
      for (int s = 0; s < 3; ++s) {
        const Form g = q.polynomial() * rng.form(3, d - 2);
        EXPECT_EQ(bombieri_weyl(h, g, q), 0);
      }
  const Form x0 = Form::variable(3, 0);
  EXPECT_EQ(bombieri_weyl(pow(x0, 3), pow(x0, 3), q), 1);
  EXPECT_THROW(bombieri_weyl(x0, x0, QuadraticForm::hyperbolic(3)), std::invalid_argument);
}

TEST(QuadraticForm, JsonRoundTrip) {
  const auto q = QuadraticForm::hyperbolic(3);
  EXPECT_EQ(quadratic_form_from_json(to_json(q)).gram(), q.gram());
}

}  // namespace
}  // namespace hessmap
