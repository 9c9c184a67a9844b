#include "ljmayer/radius.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ljmayer;

TEST(Radius, Formulas) {
  const BoundInputs in{1.0, 41.66, 7.89, 50000.0, 0.3637};
  EXPECT_NEAR(std::log(pr_radius(in)), -(2 * 41.66 + 1) - std::log(7.89), 1e-12);
  EXPECT_NEAR(std::log(mps_radius(in)), -(41.66 + 1) - std::log(50000.0), 1e-12);
}

TEST(Radius, HeadlineRatio) {
  const BoundInputs in{1.0, 41.66, 7.89, 50000.0, 0.3637};
  const double r = improvement_ratio(in, in);
  EXPECT_NEAR(r, 1.953507644e14, 1e5);
  EXPECT_GT(std::log(r), 32.9);
  EXPECT_NEAR(r, mps_radius(in) / pr_radius(in), 1e-9 * r);
}

TEST(Radius, ExactRatio) {
  const auto chk = exact_ratio_check("41.66", "7.89", "50000", "6338", "32.9");
  EXPECT_TRUE(chk.ratio_ge_exp_over_denom);
  EXPECT_TRUE(chk.exp_over_denom_ge_target);
  EXPECT_NEAR(chk.exp_gap_lower, std::exp(41.66 - 32.9), 1e-6);
  EXPECT_FALSE(exact_ratio_check("41.66", "7.89", "50000", "6400", "32.9").exp_over_denom_ge_target);
}

TEST(Radius, RejectsBadInputs) {
  EXPECT_THROW(pr_radius({0.0, 41.66, 7.89, 5e4, 0.3}), std::domain_error);
  EXPECT_THROW(mps_radius({1.0, 41.66, 7.89, -1.0, 0.3}), std::domain_error);
  EXPECT_THROW(improvement_ratio({1.0}, {2.0}), std::domain_error);
}

TEST(Coefficients, ClosedFormsLowOrder) {
  const BoundInputs in{1.0, 2.0, 3.0, 5.0, 0.3};
  EXPECT_DOUBLE_EQ(coefficient_bound(1, BoundVariant::PR, in), 1.0);
  EXPECT_DOUBLE_EQ(coefficient_bound(1, BoundVariant::NEW, in), 1.0);
  EXPECT_NEAR(coefficient_bound(2, BoundVariant::PR, in), std::exp(4.0) * 3.0 / 2.0, 1e-9);
  EXPECT_NEAR(coefficient_bound(2, BoundVariant::NEW, in), std::exp(4.0) * 5.0 / 2.0, 1e-9);
  EXPECT_NEAR(coefficient_bound(3, BoundVariant::PR, in), std::exp(8.0) * 3.0 * 9.0 / 6.0, 1e-6);
  EXPECT_NEAR(coefficient_bound(3, BoundVariant::NEW, in), std::exp(6.0) * 3.0 * 25.0 / 6.0, 1e-6);
  EXPECT_THROW(coefficient_bound(0, BoundVariant::PR, in), std::domain_error);
}

TEST(Coefficients, RootTestRecoversRadius) {
  // |C_n|^{1/n} -> 1 / rho as n grows
  const BoundInputs in{1.0, 41.66, 7.89, 50000.0, 0.3637};
  const int n = 1000000;
  const double root = std::exp(log_coefficient_bound(n, BoundVariant::NEW, in) / n);
  EXPECT_NEAR(root * mps_radius(in), 1.0, 1e-4);
}

TEST(Grid, IncludesEndpoint) {
  const auto g = make_grid(0.30, 0.3637, 0.01);
  EXPECT_DOUBLE_EQ(g.front(), 0.30);
  EXPECT_DOUBLE_EQ(g.back(), 0.3637);
  EXPECT_EQ(g.size(), 8u);
}

TEST(Optimize, TightPolicyPrefersLargestA) {
  const auto res = optimize_radius(1.0, make_grid(0.33, 0.3637, 0.01), EllPolicy::Tight);
  ASSERT_TRUE(res.best.has_value());
  EXPECT_DOUBLE_EQ(res.rows[*res.best].a, 0.3637);
  for (std::size_t i = 1; i < res.rows.size(); ++i) EXPECT_GT(res.rows[i].rho_new, res.rows[i - 1].rho_new);
}

TEST(Optimize, FixedPolicyMarksInvalidCandidates) {
  const auto res = optimize_radius(1.0, {0.35, 0.37}, EllPolicy::Fixed, 0.42);
  EXPECT_TRUE(res.rows[0].valid);
  EXPECT_FALSE(res.rows[1].valid);
  EXPECT_FALSE(res.rows[1].note.empty());
}

TEST(Optimize, TightEllSatisfiesGridCondition) {
  for (double a : {0.3, 0.33, 0.3637}) {
    const double l = tight_ell(a);
    EXPECT_LE(a, std::sqrt(3.0) / 2.0 * l);
    EXPECT_NEAR(l, 2.0 * a / std::sqrt(3.0), 1e-15);
  }
}
