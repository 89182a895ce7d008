#include <cmath>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "spherebound/formulas.hpp"
#include "spherebound/geometry.hpp"
#include "spherebound/verify.hpp"

using namespace spherebound;

namespace {

bool acceptable(CheckStatus s) { return s == CheckStatus::pass || s == CheckStatus::outside_domain; }

}  // namespace

TEST(Verify, RegistryOrderAndLookup) {
  ASSERT_EQ(check_names().size(), 10u);
  EXPECT_EQ(check_names().front(), "radius-recursion");
  EXPECT_EQ(check_names().back(), "comparison");
  EXPECT_TRUE(is_check_name("five-side-bound"));
  EXPECT_FALSE(is_check_name("bogus"));
  EXPECT_THROW(run_check("bogus"), std::invalid_argument);
  EXPECT_EQ(to_string(CheckStatus::outside_domain), "expected-outside-domain");
}

TEST(Verify, CombineRanksStatuses) {
  CheckReport pass;
  CheckReport outside;
  outside.status = CheckStatus::outside_domain;
  CheckReport unsure;
  unsure.status = CheckStatus::inconclusive;
  CheckReport bad;
  bad.status = CheckStatus::fail;
  EXPECT_EQ(combine({pass, outside}), CheckStatus::pass);
  EXPECT_EQ(combine({pass, unsure}), CheckStatus::inconclusive);
  EXPECT_EQ(combine({unsure, bad, pass}), CheckStatus::fail);
}

TEST(Verify, DeterministicChecksPassWithDefaults) {
  for (const char* name : {"radius-recursion", "extremal-angle", "five-side-bound", "center-distance",
                           "truncation-ratio"}) {
    const CheckReport r = run_check(name);
    EXPECT_EQ(r.status, CheckStatus::pass) << name << ": " << r.summary;
  }
}

TEST(Verify, FiveSideBoundBelowItsRange) {
  for (int d : {4, 7}) {
    const CheckReport r = check_five_side_bound(d, 100);
    EXPECT_EQ(r.status, CheckStatus::outside_domain) << r.summary;
  }
  EXPECT_EQ(check_five_side_bound(8, 100).status, CheckStatus::pass);
  EXPECT_THROW(check_five_side_bound(3, 100), std::invalid_argument);
}

TEST(Verify, PreconditionsThrow) {
  EXPECT_THROW(check_extremal_angle(3, 100), std::invalid_argument);
  EXPECT_THROW(check_center_distance(2), std::invalid_argument);
  EXPECT_THROW(check_truncation_ratio(8, 1), std::invalid_argument);
}

TEST(Verify, StatisticalChecksPassAtReducedSize) {
  CheckParams p;
  p.samples = 50000;
  EXPECT_TRUE(acceptable(run_check("limiting-monotone", p).status));
  EXPECT_TRUE(acceptable(run_check("truncation", p).status));
  EXPECT_TRUE(acceptable(run_check("comparison", p).status));
  p.trials = 10;
  p.samples = 20000;
  EXPECT_TRUE(acceptable(run_check("truncated-wedge", p).status));
  p.samples = 200000;
  p.points = 3;
  EXPECT_TRUE(acceptable(run_check("square-truncation", p).status));
}

TEST(Verify, ReportsAreReproducible) {
  CheckParams p;
  p.samples = 20000;
  const CheckReport a = run_check("truncation", p);
  const CheckReport b = run_check("truncation", p);
  ASSERT_EQ(a.metrics.size(), b.metrics.size());
  for (std::size_t i = 0; i < a.metrics.size(); ++i) EXPECT_EQ(a.metrics[i].second, b.metrics[i].second);
  ASSERT_EQ(a.parts.size(), b.parts.size());
}

TEST(RandomQuadrilateral, SidesRespectTheInradius) {
  const double g = 0.19;
  RandomStream s(4, 0, 0);
  for (int k = 0; k < 500; ++k) {
    const auto quad = random_quadrilateral(g, s);
    ASSERT_EQ(quad.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
      const Point2 a = quad[i];
      const Point2 b = quad[(i + 1) % 4];
      const double dist = std::abs(a.x * b.y - a.y * b.x) / std::hypot(b.x - a.x, b.y - a.y);
      ASSERT_GE(dist, g - 1e-12);
      ASSERT_LE(dist, 1.25 * g + 1e-12);
    }
  }
}
