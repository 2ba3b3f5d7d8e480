#include <hessmap/closed_orbits.hpp>
#include <hessmap/curves.hpp>
#include <hessmap/diophantine.hpp>

#include <gtest/gtest.h>

#include <algorithm>

namespace hessmap {
namespace {

// Independent 128-bit evaluation of the three quadratics.
__int128 condition_i128(ConditionTag t, long r, long k, long m) {
  const __int128 R = r, K = k, M = m;
  switch (t) {
    case ConditionTag::EvenA: return 2 * M * M + (R - 1) * M - K * (R + 1);
    case ConditionTag::Odd: return (2 * K + 1) * M * M + (R * K + R - K) * M - K * (K + 1) * (R + 1);
    case ConditionTag::EvenB: return 2 * K * M * M + (R * K + R - 5 * K + 1) * M - K * (K * (R + 1) + R - 3);
  }
  return 0;
}

std::vector<std::pair<long, long>> naive_scan(ConditionTag t, long r, long kmin, long kmax) {
  std::vector<std::pair<long, long>> out;
  for (long k = kmin; k <= kmax; ++k)
    for (long m = t == ConditionTag::EvenA ? 1 : 0; m <= k; ++m)
      if (condition_i128(t, r, k, m) == 0) out.emplace_back(k, m);
  return out;
}

TEST(Condition, ParseAndPrint) {
  for (auto t : {ConditionTag::EvenA, ConditionTag::Odd, ConditionTag::EvenB}) EXPECT_EQ(parse_condition(to_string(t)), t);
  EXPECT_THROW(parse_condition("even"), std::invalid_argument);
}

TEST(Condition, EvaluationMatchesWideArithmetic) {
  for (auto t : {ConditionTag::EvenA, ConditionTag::Odd, ConditionTag::EvenB})
    for (long r = 1; r <= 5; ++r)
      for (long k = 1; k <= 40; ++k)
        for (long m = -3; m <= k + 3; ++m) {
          const __int128 v = condition_i128(t, r, k, m);
          EXPECT_EQ(evaluate_condition(t, r, k, m), Integer(static_cast<long>(v)));
        }
}

TEST(Scan, KnownViolationSets) {
  using V = std::vector<std::pair<long, long>>;
  EXPECT_EQ(scan_condition(ConditionTag::EvenA, 2, 2, 6).violations, V{});
  EXPECT_EQ(scan_condition(ConditionTag::EvenA, 2, 2, 20).violations, (V{{7, 3}, {12, 4}}));
  EXPECT_EQ(scan_condition(ConditionTag::Odd, 2, 2, 100).violations, V{});
  EXPECT_EQ(scan_condition(ConditionTag::EvenB, 2, 2, 100).violations, (V{{2, 2}}));
  EXPECT_THROW(scan_condition(ConditionTag::Odd, 2, 5, 4), std::invalid_argument);
}

// Property: the scan agrees with a naive evaluation for several r.
TEST(ScanProperty, MatchesNaiveScan) {
  for (auto t : {ConditionTag::EvenA, ConditionTag::Odd, ConditionTag::EvenB})
    for (long r = 1; r <= 6; ++r) {
      const auto rep = scan_condition(t, r, 1, 150);
      EXPECT_EQ(rep.violations, naive_scan(t, r, 1, 150)) << to_string(t) << " r=" << r;
      for (const auto& [k, m] : rep.out_of_range_roots) {
        EXPECT_EQ(condition_i128(t, r, k, m), 0);
        EXPECT_TRUE(m < (t == ConditionTag::EvenA ? 1 : 0) || m > k);
      }
    }
}

TEST(IntegerRoots, QuadraticAndLinear) {
  EXPECT_EQ(integer_roots_quadratic(1, -5, 6), (std::vector<Integer>{2, 3}));
  EXPECT_EQ(integer_roots_quadratic(1, -4, 4), (std::vector<Integer>{2}));
  EXPECT_TRUE(integer_roots_quadratic(2, 0, -1).empty());
  EXPECT_EQ(integer_roots_quadratic(0, 2, -6), (std::vector<Integer>{3}));
  EXPECT_TRUE(integer_roots_quadratic(0, 0, 1).empty());
}

// Each condition vanishes exactly where the computed eps-coefficient of the
// corresponding Hessian expansion does: an oracle that never reads the
// closed forms.
TEST(ConditionOracle, ZerosMatchComputedTaylorCoefficients) {
  for (int k = 1; k <= 7; ++k)
    for (int m = 1; m <= k; ++m)
      EXPECT_EQ(evaluate_condition(ConditionTag::EvenA, 2, k, m) == 0, taylor_even(2, k, m).extracted.c1 == 0) << k << " " << m;
  for (int k = 1; k <= 5; ++k)
    for (int m = 0; m <= k; ++m)
      EXPECT_EQ(evaluate_condition(ConditionTag::Odd, 2, k, m) == 0, taylor_odd(2, k, m).extracted.c1 == 0) << k << " " << m;
  for (int k = 2; k <= 5; ++k)
    for (int m = 1; m <= k; ++m)
      EXPECT_EQ(evaluate_condition(ConditionTag::EvenB, 2, k, m) == 0, taylor_even2(2, k, m).extracted.c1 == 0) << k << " " << m;
}

// For r = 2 the odd and second even conditions are the two plane curves, so
// their violations are the integral points with 0 <= m <= k.
TEST(ConditionOracle, ViolationsAreCurvePoints) {
  const std::pair<ConditionTag, int> pairs[] = {{ConditionTag::Odd, 1}, {ConditionTag::EvenB, 2}};
  for (const auto& [t, family] : pairs) {
    for (long k = -3; k <= 30; ++k)
      for (long m = -10; m <= 10; ++m) EXPECT_EQ(evaluate_condition(t, 2, k, m), plane_curve_value(family, Integer(k), Integer(m)));
    std::vector<std::pair<long, long>> expected;
    for (const auto& [x, y] : omega(family))
      if (x >= 2 && y >= 0 && y <= x) expected.emplace_back(x, y);
    EXPECT_EQ(scan_condition(t, 2, 2, 1000).violations, expected);
  }
}

}  // namespace
}  // namespace hessmap
