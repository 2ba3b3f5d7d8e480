#include <hessmap/certificate.hpp>

#include <gtest/gtest.h>

namespace hessmap {
namespace {

TEST(BranchTable, SelectsByParityAndHalfDegree) {
  for (int d = 4; d <= 30; ++d) {
    const Branch expected = d % 2 == 1 ? Branch::Odd : (d / 2 <= 6 ? Branch::EvenA : Branch::EvenB);
    EXPECT_EQ(select_branch(d), expected) << d;
  }
  EXPECT_THROW(select_branch(3), std::invalid_argument);
  EXPECT_EQ(to_string(Branch::EvenA), "evenA-via-2.9");
  EXPECT_EQ(to_string(Branch::EvenB), "evenB-via-2.18");
  EXPECT_EQ(to_string(Branch::Odd), "odd-via-2.17");
}

TEST(Certificate, QuarticUsesFirstClause) {
  const auto c = certify_birationality_preconditions(4);
  ASSERT_TRUE(c.branch.has_value());
  EXPECT_EQ(*c.branch, Branch::EvenA);
  EXPECT_EQ(c.k, 2);
  EXPECT_TRUE(c.scan.clean());
  EXPECT_EQ(c.rank.claim, "injective");
  EXPECT_EQ(c.gates.licensed(), std::vector<int>{1});
  EXPECT_TRUE(c.gate_ok);
  EXPECT_FALSE(c.curve_consistent.has_value());
  EXPECT_TRUE(c.pass);
}

// At d = 14 the first even condition fails at (7, 3), which is why the
// second even branch takes over.
TEST(Certificate, Degree14SwitchesToSecondEvenBranch) {
  const auto c = certify_birationality_preconditions(14);
  ASSERT_TRUE(c.branch.has_value());
  EXPECT_EQ(*c.branch, Branch::EvenB);
  ASSERT_TRUE(c.evena_scan.has_value());
  EXPECT_EQ(c.evena_scan->violations, (std::vector<std::pair<long, long>>{{7, 3}}));
  EXPECT_TRUE(c.scan.clean());
  EXPECT_EQ(c.gates.licensed(), (std::vector<int>{1, 3}));
  EXPECT_EQ(c.curve_consistent, std::optional<bool>(true));
  EXPECT_FALSE(c.trusted.empty());
  EXPECT_TRUE(c.pass);
}

TEST(Certificate, OddDegreeUsesSecondClauseWithNote) {
  const auto c = certify_birationality_preconditions(7);
  ASSERT_TRUE(c.branch.has_value());
  EXPECT_EQ(*c.branch, Branch::Odd);
  EXPECT_EQ(c.gates.licensed(), std::vector<int>{2});
  EXPECT_EQ(c.curve_consistent, std::optional<bool>(true));
  EXPECT_FALSE(c.notes.empty());
  EXPECT_TRUE(c.pass);
}

TEST(Certificate, QuinticIsAnExclusionRecord) {
  const auto c = certify_birationality_preconditions(5);
  EXPECT_TRUE(c.excluded);
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.branch.has_value());
  const Json j = to_json(c);
  EXPECT_EQ(j["branch"], "excluded");
  EXPECT_TRUE(j["scan"].is_null());
  EXPECT_TRUE(j.contains("versions"));
  EXPECT_THROW(certify_birationality_preconditions(3), std::invalid_argument);
}

TEST(Certificate, AllDegreesThroughSixteenPass) {
  for (int d = 4; d <= 16; ++d) {
    if (d == 5) continue;
    const auto c = certify_birationality_preconditions(d);
    EXPECT_TRUE(c.pass) << d;
    const Json j = to_json(c);
    EXPECT_EQ(j["d"], d);
    EXPECT_EQ(j["gates"]["required_clause"], branch_clause(*c.branch));
  }
}

}  // namespace
}  // namespace hessmap
