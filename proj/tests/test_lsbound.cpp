#include "ljmayer/lsbound.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ljmayer;
namespace ex = ljmayer::exact;

// Reference values below were computed independently with mpmath at 30 digits.

TEST(Margins, ReferenceValues) {
  EXPECT_NEAR(case1_margin(0.4), 0.851421897139895927, 1e-12);
  EXPECT_NEAR(case2_margin(0.5), 6.991742733436072866, 1e-12);
}

TEST(Margins, StrictlyDecreasingInEll) {
  double prev1 = case1_margin(0.2), prev2 = case2_margin(0.2);
  for (double l = 0.201; l < 0.8; l += 0.001) {
    const double m1 = case1_margin(l), m2 = case2_margin(l);
    EXPECT_LT(m1, prev1);
    EXPECT_LT(m2, prev2);
    prev1 = m1;
    prev2 = m2;
  }
}

TEST(Margins, ExactMatchesDouble) {
  const ex::Rational l(21, 50);
  EXPECT_NEAR(ex::to_double(case1_margin(l)), case1_margin(0.42), 1e-13);
  EXPECT_NEAR(ex::to_double(case2_margin(l)), case2_margin(0.42), 1e-13);
}

TEST(Thresholds, Ell1) {
  const auto& t = ell1();
  EXPECT_NEAR(t.root, 0.427589165119, 1e-11);
  EXPECT_LE(t.hi - t.lo, 1e-12);
  EXPECT_TRUE(t.exact_sign_change);
  EXPECT_GT(case1_margin(ex::parse_decimal("0.4275")), 0);
  EXPECT_LT(case1_margin(ex::parse_decimal("0.4276")), 0);
}

TEST(Thresholds, Ell2) {
  const auto& t = ell2();
  EXPECT_NEAR(t.root, 0.6268431955, 1e-9);
  EXPECT_TRUE(t.exact_sign_change);
  EXPECT_GT(case2_margin(ex::parse_decimal("0.6268")), 0);
  EXPECT_LT(case2_margin(ex::parse_decimal("0.6269")), 0);
}

TEST(Bounds, ReferenceValues) {
  EXPECT_NEAR(case1_bound(0.4), 5976.00904651041188, 1e-8);
  EXPECT_NEAR(case2_bound(0.42), 4917.00470595523089, 1e-8);
  EXPECT_NEAR(F(0.42), 15534.5467532, 1e-6);
  EXPECT_NEAR(F(0.4), 5976.00904651041188, 1e-8);
}

TEST(Bounds, DomainErrors) {
  EXPECT_THROW(case1_bound(0.43), std::domain_error);
  EXPECT_THROW(case2_bound(0.63), std::domain_error);
  EXPECT_THROW(case1_bound(-0.1), std::domain_error);
  EXPECT_THROW(F(0.43), std::domain_error);
}

TEST(Bounds, ExactAgreesWithDouble) {
  EXPECT_NEAR(ex::to_double(F_exact(ex::Rational(21, 50))) / F(0.42), 1.0, 1e-12);
}

TEST(Minimization, CaseMinima) {
  const auto m1 = minimize_bound(BoundFunction::Case1);
  EXPECT_NEAR(m1.x, 0.36720838, 1e-6);
  EXPECT_NEAR(m1.value, 4711.4329, 1e-3);
  const auto m2 = minimize_bound(BoundFunction::Case2);
  EXPECT_NEAR(m2.x, 0.53856566, 1e-6);
  EXPECT_NEAR(m2.value, 3019.3818, 1e-3);
}

TEST(Minimization, FMinimumIsNotTheCase1Minimum) {
  const auto m = minimize_bound(BoundFunction::F);
  EXPECT_NEAR(m.x, 0.39769, 1e-4);
  EXPECT_NEAR(m.value, 5731.75, 0.05);
  // F >= case1 everywhere on its domain
  for (double l = 0.30; l < 0.4275; l += 0.0025) EXPECT_GE(F(l), case1_bound(l));
}

TEST(LatticeSum, BelowCap) {
  const auto s = lattice_tail_sum();
  EXPECT_NEAR(s.upper(), 8.577152931657565, 1e-6);
  EXPECT_LT(lattice_tail_upper_exact(), ex::Rational(9));
}

TEST(Certificate, DefaultParameters) {
  const auto c = rmin_certificate(0.3637, 0.42);
  EXPECT_TRUE(c.valid) << c.failure_reason;
  EXPECT_NEAR(c.rmin_lower, 0.446832116912441379, 1e-9);
  EXPECT_LE(c.rmin_lower, 0.446832116912441379);
  EXPECT_LE(c.rmin_bracket_hi - c.rmin_lower, 1e-10);
  EXPECT_DOUBLE_EQ(c.plateau, lj_eval(0.3637));
  EXPECT_DOUBLE_EQ(c.wplus_bound, F(0.42));
}

TEST(Certificate, OtherEll) {
  const auto c = rmin_certificate(0.34, 0.40);
  EXPECT_TRUE(c.valid) << c.failure_reason;
  EXPECT_NEAR(c.rmin_lower, 0.483462465149162361, 1e-9);
}

TEST(Certificate, GridViolationsAreNamed) {
  const auto too_large_a = rmin_certificate(0.37, 0.42);  // a > (sqrt 3 / 2) ell
  EXPECT_FALSE(too_large_a.valid);
  EXPECT_NE(too_large_a.failure_reason.find("a <="), std::string::npos) << too_large_a.failure_reason;
  const auto too_large_ell = rmin_certificate(0.30, 0.43);
  EXPECT_FALSE(too_large_ell.valid);
  EXPECT_FALSE(too_large_ell.failure_reason.empty());
}

TEST(Certificate, RminLowerIndependentOfAWhenValid) {
  // a enters only through the grid conditions and the initial bracket
  const auto c1 = rmin_certificate(0.30, 0.42);
  const auto c2 = rmin_certificate(0.36, 0.42);
  ASSERT_TRUE(c1.valid && c2.valid);
  EXPECT_NEAR(c1.rmin_lower, c2.rmin_lower, 1e-10);
}

TEST(StabilityEquivalence, DefaultParametersCertified) {
  const auto r = verify_stability_equivalence(0.3637, 0.42);
  EXPECT_TRUE(r.certified);
  EXPECT_TRUE(r.cutoff_minimizers_are_lj_minimizers.holds);
  EXPECT_TRUE(r.lj_minimizers_are_cutoff_minimizers.holds);
}

TEST(StabilityEquivalence, FailsWhenFullBoundDoesNotClearA) {
  const auto r = verify_stability_equivalence(0.3637, 0.42, 0.3);
  EXPECT_FALSE(r.certified);
  EXPECT_FALSE(r.lj_minimizers_are_cutoff_minimizers.holds);
}
