#include "ljmayer/quad.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ljmayer;

TEST(Quadrature, PolynomialIsExact) {
  const auto r = integrate_radial([](double x) { return x * x * x; }, 0.0, 2.0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 4.0, 1e-13);
}

TEST(Quadrature, InfiniteTail) {
  const auto r = integrate_radial([](double x) { return 1.0 / (x * x); }, 1.0, INFINITY);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(Quadrature, KinkAtSplitPoint) {
  QuadratureSpec q;
  q.split_points = {0.37};
  const auto r = integrate_radial([](double x) { return std::abs(x - 0.37); }, 0.0, 1.0, q);
  EXPECT_NEAR(r.value, 0.5 * (0.37 * 0.37 + 0.63 * 0.63), 1e-14);
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureSpec q;
  q.max_subdivisions = 3;
  q.abs_tol = q.rel_tol = 1e-15;
  const auto r = integrate_radial([](double x) { return std::sin(200.0 * x); }, 0.0, 3.0, q);
  EXPECT_FALSE(r.converged);
}

TEST(Quadrature, MidpointAgreesOnSmoothIntegrand) {
  const double m = integrate_midpoint([](double x) { return std::exp(-x); }, 0.0, 1.0, 100000, {});
  EXPECT_NEAR(m, 1.0 - std::exp(-1.0), 1e-10);
}

// mpmath references at 30 digits
TEST(MayerIntegrals, CBetaReference) {
  const auto c1 = c_beta(1.0, PotentialSpec::lennard_jones());
  EXPECT_TRUE(c1.converged);
  EXPECT_NEAR(c1.value, 12.98137711268265, 1e-8);
  const auto c2 = c_beta(2.0, PotentialSpec::lennard_jones());
  EXPECT_NEAR(c2.value, 31.4767273925822699, 1e-7);
}

TEST(MayerIntegrals, CBetaIncreasesWithBeta) {
  double prev = 0.0;
  for (double b : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const double v = c_beta(b, PotentialSpec::lennard_jones()).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(MayerIntegrals, TildeCReference) {
  const auto r = tilde_c_beta(1.0, 0.3637);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value / 49825.42896849844, 1.0, 1e-9);
  EXPECT_LE(r.value, tilde_c_overestimate(1.0, 0.3637));
  EXPECT_NEAR(tilde_c_overestimate(1.0, 0.3637), 49999.56502392064, 1e-6);
}

TEST(MayerIntegrals, TildeCDecreasesWithA) {
  double prev = INFINITY;
  for (double a = 0.30; a <= 0.3637; a += 0.01) {
    const double v = tilde_c_beta(1.0, a).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(ClosedForms, AttractiveTail) {
  EXPECT_NEAR(attractive_tail_exact_value(), 7.898458556725984, 1e-13);
  EXPECT_NEAR(attractive_tail_closed_form(), attractive_tail_exact_value(), 1e-12);
  const auto q = integrate_radial(
      [](double r) { return 4.0 * std::numbers::pi * r * r * std::abs(lj_eval(r)); }, kLJZero, INFINITY);
  EXPECT_NEAR(q.value, attractive_tail_exact_value(), 1e-8);
}

TEST(ClosedForms, OverestimateByQuadrature) {
  const auto q = integrate_radial(tilde_c_overestimate_integrand(1.0, 0.3637), 0.0, INFINITY,
                                  {1e-10, 1e-12, 4000, {0.3637, kLJZero}});
  EXPECT_NEAR(q.value / tilde_c_overestimate(1.0, 0.3637), 1.0, 1e-9);
}
