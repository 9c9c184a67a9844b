#include "ljmayer/report.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ljmayer;

TEST(Config, DefaultsAreValid) {
  RunConfig c;
  EXPECT_NO_THROW(validate(c));
  EXPECT_DOUBLE_EQ(c.beta, 1.0);
  EXPECT_DOUBLE_EQ(c.a, 0.3637);
  EXPECT_DOUBLE_EQ(c.ell, 0.42);
  EXPECT_DOUBLE_EQ(c.stability_B, 41.66);
}

TEST(Config, ParsesKeyValueLines) {
  RunConfig c;
  std::istringstream in("# comment\n\nbeta = 2\n a=0.35 \nseed = 17\njson = out.json\n");
  apply_config_text(c, in);
  EXPECT_DOUBLE_EQ(c.beta, 2.0);
  EXPECT_DOUBLE_EQ(c.a, 0.35);
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.json_path, "out.json");
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  RunConfig c;
  std::istringstream unknown("gamma = 1\n");
  EXPECT_THROW(apply_config_text(c, unknown), ConfigError);
  std::istringstream bad("beta = fast\n");
  EXPECT_THROW(apply_config_text(c, bad), ConfigError);
  std::istringstream noeq("beta 1\n");
  EXPECT_THROW(apply_config_text(c, noeq), ConfigError);
  RunConfig neg;
  neg.beta = -1;
  EXPECT_THROW(validate(neg), ConfigError);
}

TEST(Checks, Relations) {
  EXPECT_TRUE(make_check("X", "lt", "<", 2.0, 1.0, Provenance::Derived).passed);
  EXPECT_FALSE(make_check("X", "lt", "<", 1.0, 1.0, Provenance::Derived).passed);
  EXPECT_TRUE(make_check("X", "le", "<=", 1.0, 1.0, Provenance::Derived).passed);
  EXPECT_TRUE(make_check("X", "in", "in", 1.0, 1.5, Provenance::Derived, 0.0, 2.0).passed);
  EXPECT_FALSE(make_check("X", "in", "in", 1.0, 2.0, Provenance::Derived, 0.0, 2.0).passed);
  EXPECT_TRUE(make_check("X", "approx", "~", 100.0, 100.05, Provenance::Published, 1e-3).passed);
  EXPECT_THROW(make_check("X", "bad", "!=", 1.0, 1.0, Provenance::Derived), std::invalid_argument);
}

TEST(Json, CheckRoundTrip) {
  const Check c = make_check("AC-5", "value", "in", 1.0, 1.5, Provenance::Published, 0.0, 2.0);
  const Check back = json(c).get<Check>();
  EXPECT_EQ(back.id, c.id);
  EXPECT_EQ(back.relation, c.relation);
  EXPECT_EQ(back.expected_hi, c.expected_hi);
  EXPECT_EQ(back.passed, c.passed);
  EXPECT_EQ(back.provenance, c.provenance);
}

TEST(Json, ReportRoundTrip) {
  Report r;
  r.timestamp = utc_timestamp();
  r.config.seed = 5;
  r.certificate = rmin_certificate(0.3637, 0.42);
  r.equivalence = verify_stability_equivalence(0.3637, 0.42);
  r.radii.rho_new = 1e-24;
  r.radii.coefficient_bounds = {{2, 1.0, 2.0}};
  r.checks.push_back(make_flag("AC-6", "flag", true, Provenance::Derived));
  const json j = r;
  const Report back = j.get<Report>();
  EXPECT_EQ(json(back), j);
  EXPECT_EQ(back.config.seed, 5u);
  EXPECT_DOUBLE_EQ(back.certificate.rmin_lower, r.certificate.rmin_lower);
  EXPECT_TRUE(back.all_passed());
}

TEST(Json, TimestampFormat) {
  const auto t = utc_timestamp();
  ASSERT_EQ(t.size(), 20u);
  EXPECT_EQ(t[10], 'T');
  EXPECT_EQ(t.back(), 'Z');
}
