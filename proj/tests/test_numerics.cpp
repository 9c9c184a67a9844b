#include "ljmayer/exact.hpp"
#include "ljmayer/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ljmayer;
namespace ex = ljmayer::exact;

TEST(Bisect, FindsSqrtTwo) {
  const auto r = bisect([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-13);
  EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-12);
  EXPECT_LE(r.hi - r.lo, 1e-13);
  EXPECT_LT(r.lo * r.lo - 2.0, 0.0);
  EXPECT_GT(r.hi * r.hi - 2.0, 0.0);
}

TEST(Bisect, ThrowsWithoutSignChange) {
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
}

TEST(Bisect, ScanFindsBracket) {
  const auto [lo, hi] = scan_for_bracket([](double x) { return std::cos(x); }, 0.0, 3.0);
  EXPECT_LE(lo, M_PI / 2);
  EXPECT_GE(hi, M_PI / 2);
  EXPECT_LE(hi - lo, 1e-3 + 1e-12);
}

TEST(GoldenSection, Parabola) {
  const auto m = golden_section([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(m.x, 0.3, 1e-7);  // flat minimum: ~sqrt(eps) resolution
  EXPECT_NEAR(m.value, 1.0, 1e-14);
}

TEST(GridGolden, SkipsInvalidRegion) {
  auto f = [](double x) {
    if (x > 0.8) throw std::domain_error("outside");
    return std::abs(x - 0.5) + 2.0;
  };
  const auto m = grid_golden_minimize(f, 0.0, 1.0);
  EXPECT_NEAR(m.x, 0.5, 1e-8);
}

TEST(Exact, FromDoubleIsExact) {
  EXPECT_EQ(ex::from_double(0.5), ex::Rational(1, 2));
  EXPECT_EQ(ex::from_double(0.1) == ex::Rational(1, 10), false);
  EXPECT_EQ(ex::to_double(ex::from_double(0.1)), 0.1);
}

TEST(Exact, ParseDecimal) {
  EXPECT_EQ(ex::parse_decimal("0.4275"), ex::Rational(4275, 10000));
  EXPECT_EQ(ex::parse_decimal("-12.5"), ex::Rational(-25, 2));
  EXPECT_EQ(ex::parse_decimal("50000"), ex::Rational(50000));
  EXPECT_THROW(ex::parse_decimal("1.2.3"), std::invalid_argument);
}

TEST(Exact, PowAndSign) {
  EXPECT_EQ(ex::pow(ex::Rational(2, 3), 3), ex::Rational(8, 27));
  EXPECT_EQ(ex::pow(ex::Rational(2), -2), ex::Rational(1, 4));
  EXPECT_EQ(ex::sign(ex::Rational(-1, 7)), -1);
  EXPECT_EQ(ex::sign(ex::Rational(0)), 0);
}

TEST(Exact, ExpBoundsBracketTheTrueValue) {
  for (const char* s : {"0", "0.5", "1", "8.76"}) {
    const auto x = ex::parse_decimal(s);
    const double e = std::exp(ex::to_double(x));
    EXPECT_LE(ex::to_double(ex::exp_lower_bound(x)), e * (1 + 1e-15)) << s;
    EXPECT_GE(ex::to_double(ex::exp_upper_bound(x)), e * (1 - 1e-15)) << s;
    EXPECT_NEAR(ex::to_double(ex::exp_lower_bound(x)) / e, 1.0, 1e-12) << s;
  }
  EXPECT_THROW(ex::exp_lower_bound(ex::Rational(-1)), std::domain_error);
}
