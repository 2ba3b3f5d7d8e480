#include <hessmap/differential_rank.hpp>
#include <hessmap/random.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace hessmap {
namespace {

// Columns of the differential agree with the interpolation oracle.
TEST(DifferentialMatrix, ColumnsMatchInterpolation) {
  Rng rng(51);
  for (int s = 0; s < 4; ++s) {
    const Form f = rng.nonzero_form(3, 3, 80, 5);
    if (hess(f).is_zero()) continue;
    const RationalMatrix m = differential_matrix(f);
    const auto domain = monomial_basis(3, 3);
    const auto target = monomial_basis(3, hess(f).degree());
    const auto p = testing::random_point(rng, 3);
    for (std::size_t c = 0; c < domain.size(); ++c) {
      const Form col = from_coordinates(3, hess(f).degree(), target, m.column(c));
      EXPECT_EQ(evaluate(col, p), testing::hessian_derivative_at(f, Form::monomial(domain[c]), p));
    }
  }
}

// The direction f maps to n Hess(f), so the projective rank is rank(M) - 1.
TEST(DifferentialMatrix, EulerDirection) {
  Rng rng(52);
  for (int s = 0; s < 6; ++s) {
    const Form f = rng.nonzero_form(3, static_cast<int>(rng.integer(3, 4)), 70, 5);
    const Form hf = hess(f);
    if (hf.is_zero()) continue;
    const auto domain = monomial_basis(3, f.degree());
    const auto target = monomial_basis(3, hf.degree());
    const auto image = differential_matrix(f) * coordinates(f, domain);
    EXPECT_EQ(from_coordinates(3, hf.degree(), target, image), hf * Rational(3));
  }
}

std::size_t oracle_projective_rank(const Form& f) { return row_reduce(differential_matrix(f)).pivot_columns.size() - 1; }

struct RankCase {
  SpecialPoint point;
  const char* claim;
  bool injective;
};

TEST(SpecialPointRank, SmallPointsMatchOracleAndClaims) {
  const std::vector<RankCase> cases = {
      {SpecialPoint::qk(2, 2), "injective", true},      {SpecialPoint::qk(2, 3), "injective", true},
      {SpecialPoint::qkl(2, 1), "not-injective", false}, {SpecialPoint::qkl(2, 2), "injective", true},
      {SpecialPoint::qk1l2(2, 2), "no-claim", false},   {SpecialPoint::qk1l2(2, 3), "injective", true},
  };
  for (const auto& c : cases) {
    const auto rep = verify_special_point_rank(c.point);
    EXPECT_EQ(rep.claim, c.claim) << rep.point;
    EXPECT_EQ(rep.injective, c.injective) << rep.point;
    EXPECT_TRUE(rep.pass) << rep.point;
    EXPECT_EQ(rep.rank, oracle_projective_rank(c.point.form())) << rep.point;
    EXPECT_EQ(rep.domain_dim, sym_dimension(3, c.point.degree()) - 1);
  }
}

TEST(SpecialPointRank, PointsWithoutConditionMakeNoClaim) {
  const auto rep = verify_special_point_rank(SpecialPoint::qklh(2, 1, 2));
  EXPECT_EQ(rep.claim, "none");
  EXPECT_FALSE(rep.precondition.has_value());
  EXPECT_TRUE(rep.pass);
}

TEST(SpecialPointRank, RejectsVanishingHessian) {
  EXPECT_THROW(differential_matrix(pow(Form::variable(3, 1), 4)), std::invalid_argument);
}

// Property: the monomial complement and random complements give one rank.
TEST(RankProperty, ComplementIndependence) {
  Rng rng(53);
  std::vector<Form> forms = {SpecialPoint::qk(2, 2).form(), SpecialPoint::qkl(2, 1).form(), SpecialPoint::qk1l2(2, 2).form()};
  for (int s = 0; s < 3; ++s) forms.push_back(rng.nonzero_form(3, 3, 60, 4));
  for (const auto& f : forms) {
    if (hess(f).is_zero()) continue;
    const auto rep = projective_injectivity(f);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) EXPECT_EQ(projective_rank_random_complement(f, seed), rep.rank);
    EXPECT_EQ(rep.rank, oracle_projective_rank(f));
  }
}

// Property: the rank is invariant under linear changes of variables.
TEST(RankProperty, InvariantUnderLinearChange) {
  Rng rng(54);
  const Form f = SpecialPoint::qkl(2, 1).form();
  const auto base = projective_injectivity(f).rank;
  for (int s = 0; s < 3; ++s)
    EXPECT_EQ(projective_injectivity(apply_linear_change(f, LinearChange(rng.invertible(3)))).rank, base);
}

TEST(CertifiedRank, ModularPathOnlyForFullRank) {
  RationalMatrix full = RationalMatrix::identity(3);
  EXPECT_EQ(certified_rank(full).method, "modular");
  RationalMatrix low(3, 3);
  low(0, 0) = 1, low(1, 1) = 1;
  const auto rc = certified_rank(low);
  EXPECT_EQ(rc.method, "bareiss");
  EXPECT_EQ(rc.rank, 2u);
}

TEST(BlockStructure, HarmonicSlotsArePreserved) {
  for (int k = 2; k <= 3; ++k) {
    const auto rep = block_structure_check(k, 2);
    EXPECT_TRUE(rep.pass()) << k;
    EXPECT_EQ(rep.levels.size(), static_cast<std::size_t>(k));
  }
  EXPECT_THROW(block_structure_check(1, 2), std::invalid_argument);
}

TEST(Pijk, InjectiveOnSmallDegrees) {
  for (int i = 0; i <= 3; ++i)
    for (int k = 0; k <= 3; ++k) {
      const auto rep = pijk_injectivity(i, k, 2);
      EXPECT_TRUE(rep.injective) << i << " " << k;
      EXPECT_EQ(rep.domain_dim, harmonic_dimension(3, i));
    }
}

}  // namespace
}  // namespace hessmap
