#include <hessmap/curves.hpp>
#include <hessmap/fixtures.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace hessmap {
namespace {

// Naive two-dimensional search in machine integers.
std::vector<IntegerPoint> naive_points(int family, long xbound, long ybound) {
  std::vector<IntegerPoint> out;
  for (long x = -xbound; x <= xbound; ++x)
    for (long y = -ybound; y <= ybound; ++y) {
      const long v = family == 1 ? (2 * x + 1) * y * y + (x + 2) * y - 3 * x * (x + 1)
                                 : 2 * x * y * y + (3 - 3 * x) * y - x * (3 * x - 1);
      if (v == 0) out.emplace_back(x, y);
    }
  return out;
}

TEST(PlaneCurve, BruteForceMatchesNaiveSearch) {
  // |y| stays below sqrt(2|x|) + 3 on both curves away from tiny x, so a
  // y-window of 60 is exhaustive for |x| <= 300.
  for (int family = 1; family <= 2; ++family) EXPECT_EQ(brute_force_integral_points(family, 300), naive_points(family, 300, 60));
}

TEST(PlaneCurve, ParallelSplitIsDeterministic) {
  for (int family = 1; family <= 2; ++family)
    EXPECT_EQ(brute_force_integral_points(family, 5000, 1), brute_force_integral_points(family, 5000, 4));
}

TEST(PlaneCurve, IntegralPointsEqualTheStatedSets) {
  for (int family = 1; family <= 2; ++family) EXPECT_EQ(brute_force_integral_points(family, 20000), omega(family));
  EXPECT_THROW(brute_force_integral_points(3, 10), std::invalid_argument);
  EXPECT_THROW(brute_force_integral_points(1, 0), std::invalid_argument);
}

TEST(PlaneCurve, RationalEvaluationAgrees) {
  for (int family = 1; family <= 2; ++family)
    for (long x = -5; x <= 5; ++x)
      for (long y = -5; y <= 5; ++y)
        EXPECT_EQ(plane_curve_value(family, Rational(x), Rational(y)), Rational(plane_curve_value(family, Integer(x), Integer(y))));
}

TEST(Weierstrass, ModelsAreSmoothAndListedPointsLie) {
  for (int family = 1; family <= 2; ++family) {
    const auto w = weierstrass_model(family), x = integral_model(family);
    EXPECT_NE(w.discriminant(), 0);
    EXPECT_NE(x.discriminant(), 0);
    for (const auto& p : listed_weierstrass_points(family)) {
      EXPECT_TRUE(on_curve(p, w)) << p.to_string();
      EXPECT_TRUE(on_curve(rho2(p, family), x)) << p.to_string();
    }
  }
  EXPECT_EQ(curve_label(1), "366.b1");
  EXPECT_EQ(curve_label(2), "1002.e1");
}

// rho1 sends curve points to W wherever it is defined.
TEST(Weierstrass, Rho1MapsCurvePointsOntoW) {
  for (int family = 1; family <= 2; ++family)
    for (const auto& pt : brute_force_integral_points(family, 100)) {
      const ProjPoint c = family == 1 ? shift_to_cubic(pt) : ProjPoint(pt.first, pt.second);
      EXPECT_EQ(cubic_value(family, c), 0);
      const auto image = rho1(c, family);
      if (image) {
        EXPECT_TRUE(on_curve(*image, weierstrass_model(family))) << c.to_string();
      }
    }
}

TEST(ProjPoint, NormalisesLastNonzeroCoordinate) {
  EXPECT_EQ(ProjPoint(2, 4, 2), ProjPoint(1, 2, 1));
  EXPECT_EQ(ProjPoint(3, 6, 0), ProjPoint(rational(1, 2), 1, 0));
  EXPECT_THROW(ProjPoint(0, 0, 0), std::invalid_argument);
  EXPECT_THROW(rho2(ProjPoint(0, 1, 0), 1), std::invalid_argument);
}

TEST(FiberRecovery, RecoversTheIntegralPoints) {
  for (int family = 1; family <= 2; ++family) EXPECT_EQ(recovered_integral_points(family), omega(family));
  // Integral points on the shifted cubic; shifting back gives the first set.
  const auto cubic = cubic_integral_candidates();
  EXPECT_EQ(cubic, (std::vector<IntegerPoint>{{-1, 1}, {-1, 2}, {0, -2}, {0, 0}, {1, -3}, {1, 0}}));
  std::vector<IntegerPoint> back;
  for (const auto& p : cubic) back.push_back(shift_from_cubic(p));
  std::sort(back.begin(), back.end());
  EXPECT_EQ(back, omega(1));
  for (const auto& p : cubic) EXPECT_EQ(cubic_value(1, ProjPoint(p.first, p.second)), 0);
}

TEST(FiberRecovery, CandidatesLieOnTheCurve) {
  for (int family = 1; family <= 2; ++family)
    for (const auto& w : listed_weierstrass_points(family))
      for (const auto& fc : fiber_recover(w, family)) {
        EXPECT_EQ(cubic_value(family, ProjPoint(fc.x, fc.y)), 0);
        if (fc.rho1_defined) {
          EXPECT_TRUE(fc.maps_to_w) << w.to_string();
        }
      }
}

TEST(Fixtures, IntegralAndWeierstrassListsMatch) {
  const FixtureStore store;
  EXPECT_NO_THROW(store.verify_manifest());
  for (int family = 1; family <= 2; ++family) {
    EXPECT_EQ(store.omega(family), omega(family));
    auto listed = listed_weierstrass_points(family);
    auto fixture = store.weierstrass_points(family);
    std::sort(listed.begin(), listed.end());
    std::sort(fixture.begin(), fixture.end());
    EXPECT_EQ(fixture, listed);
  }
}

}  // namespace
}  // namespace hessmap
