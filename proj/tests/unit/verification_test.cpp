#include <gtest/gtest.h>

#include <set>
#include <string>

#include "hwstaff/verification.hpp"

namespace vf = hwstaff::verification;

namespace {

void expect_all_pass(const std::vector<vf::PropertyCheck>& checks) {
  ASSERT_FALSE(checks.empty());
  for (const auto& c : checks) {
    EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    EXPECT_GE(c.worst_margin, 0.0) << c.name;
    EXPECT_FALSE(c.name.empty());
  }
}

TEST(Verification, MonotonicitySuite) { expect_all_pass(vf::verify_monotonicity()); }

TEST(Verification, OrderSuite) { expect_all_pass(vf::verify_order()); }

TEST(Verification, IdentitySuite) { expect_all_pass(vf::verify_identities()); }

TEST(Verification, AllIsUnionOfSuites) {
  const auto all = vf::verify_all();
  const std::size_t expected =
      vf::verify_monotonicity().size() + vf::verify_order().size() + vf::verify_identities().size();
  EXPECT_EQ(all.size(), expected);
  std::set<std::string> names;
  for (const auto& c : all) names.insert(c.name);
  EXPECT_EQ(names.size(), all.size());
}

TEST(Verification, QuadratureFailuresBecomeFailedChecks) {
  hwstaff::numerics::QuadratureConfig cfg;
  cfg.max_refinements = 1;
  cfg.rel_tol = 1e-15;
  const auto checks = vf::verify_identities(cfg);
  bool any_failed = false;
  for (const auto& c : checks) {
    if (c.passed) continue;
    any_failed = true;
    EXPECT_NE(c.detail.find("numerical error"), std::string::npos) << c.name;
  }
  EXPECT_TRUE(any_failed);
  // Checks that do not integrate are unaffected.
  for (const auto& c : checks) {
    if (c.name.find("birth-death") != std::string::npos) {
      EXPECT_TRUE(c.passed);
    }
  }
}

}  // namespace
