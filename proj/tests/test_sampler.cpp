#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "spherebound/geometry.hpp"
#include "spherebound/join_sampler.hpp"

using namespace spherebound;

TEST(OrderStatisticLaw, QuantileMatchesIncompleteBetaInverse) {
  for (auto [rank, count] : std::vector<std::array<int, 2>>{{1, 3}, {3, 3}, {3, 7}, {3, 15}, {3, 41}, {3, 63}}) {
    const OrderStatisticLaw law(rank, count);
    for (int i = 1; i < 1000; ++i) {
      const double p = i / 1000.0;
      const double expected = boost::math::ibeta_inv(rank, count + 1 - rank, p);
      ASSERT_NEAR(law.quantile(p), expected, 1e-12 * std::max(expected, 1e-3))
          << "rank=" << rank << " count=" << count << " p=" << p;
    }
  }
}

TEST(OrderStatisticLaw, CdfInvertsQuantile) {
  const OrderStatisticLaw law(3, 41);
  for (double p : {1e-9, 1e-4, 0.1, 0.5, 0.9, 0.999}) EXPECT_NEAR(law.cdf(law.quantile(p)), p, 1e-12 * (1 + p));
  EXPECT_EQ(law.quantile(0.0), 0.0);
  EXPECT_EQ(law.quantile(1.0), 1.0);
  EXPECT_NEAR(law.mean(), 3.0 / 42.0, 1e-15);
}

TEST(OrderStatisticLaw, PdfIntegratesToOne) {
  const OrderStatisticLaw law(3, 7);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += law.pdf((i + 0.5) / n) / n;
  EXPECT_NEAR(sum, 1.0, 1e-7);
}

TEST(OrderStatisticLaw, RejectsBadShape) {
  EXPECT_THROW(OrderStatisticLaw(0, 3), std::invalid_argument);
  EXPECT_THROW(OrderStatisticLaw(4, 3), std::invalid_argument);
}

TEST(JoinSampler, TerminalRankAndCount) {
  EXPECT_EQ(JoinSampler(canonical_simplex(3)).law().rank(), 1);
  EXPECT_EQ(JoinSampler(canonical_simplex(3)).law().count(), 2);
  for (int d : {4, 8, 20}) {
    for (const WedgeConfig& c : {canonical_simplex(d), canonical_wedge(d)}) {
      const JoinSampler s(c);
      EXPECT_EQ(s.law().rank(), 3);
      EXPECT_EQ(s.law().count(), d - 1);
      EXPECT_TRUE(s.has_planar_factor());
      EXPECT_EQ(s.terminal_level(), d - 2);
    }
  }
}

TEST(JoinSampler, JoinParameterMean) {
  for (int d : {4, 8}) {
    const JoinSampler sampler(canonical_wedge(d));
    RandomStream s(d, 0, 0);
    const int n = 200000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = sampler.draw(s, 0.0, 1.0).t;
      sum += t;
      sum2 += t * t;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(mean, 3.0 / d, 5 * se) << "d=" << d;
  }
}

TEST(JoinSampler, JoinParameterQuartilesChiSquare) {
  const JoinSampler sampler(canonical_wedge(8));
  const OrderStatisticLaw& law = sampler.law();
  const std::array<double, 3> cuts{law.quantile(0.25), law.quantile(0.5), law.quantile(0.75)};
  RandomStream s(31, 0, 0);
  const int n = 100000;
  std::array<int, 4> counts{};
  for (int i = 0; i < n; ++i) {
    const double t = sampler.draw(s, 0.0, 1.0).t;
    int bin = 0;
    while (bin < 3 && t > cuts[bin]) ++bin;
    ++counts[bin];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
  EXPECT_LT(chi2, 16.27);  // 0.999 quantile, 3 degrees of freedom
}

TEST(JoinSampler, SliceRestrictsTheJoinParameter) {
  const JoinSampler sampler(canonical_wedge(8));
  RandomStream s(1, 0, 0);
  const double lo = sampler.law().quantile(0.25);
  const double hi = sampler.law().quantile(0.3125);
  for (int i = 0; i < 5000; ++i) {
    const double t = sampler.draw(s, 0.25, 0.0625).t;
    ASSERT_GE(t, lo - 1e-14);
    ASSERT_LE(t, hi + 1e-14);
  }
}

TEST(JoinSampler, DrawNormMatchesAssembledPoint) {
  for (const WedgeConfig& c : {canonical_simplex(3), canonical_simplex(7), canonical_wedge(9)}) {
    const JoinSampler sampler(c);
    RandomStream s(2, 0, 0);
    std::vector<double> ratios;
    for (int i = 0; i < 2000; ++i) {
      const JoinDraw draw = sampler.draw(s, 0.0, 1.0, &ratios);
      ASSERT_EQ(ratios.size(), sampler.heights().size());
      for (std::size_t j = 1; j < ratios.size(); ++j) ASSERT_LE(ratios[j], ratios[j - 1]);
      const std::vector<double> y = sampler.point(draw, ratios);
      const int d = c.dim();
      double chain2 = 0.0;
      for (int a = 0; a < static_cast<int>(ratios.size()) + 1; ++a) chain2 += y[a] * y[a];
      ASSERT_NEAR(chain2, draw.norm2, 1e-13);
      ASSERT_TRUE(cone_contains(c, y));
      if (sampler.has_planar_factor()) {
        ASSERT_LE(std::hypot(y[d - 2], y[d - 1]), draw.t * sampler.domain()->max_radius() + 1e-14);
      }
    }
  }
}

TEST(JoinSampler, PlanarFactoryNeedsTruncatedChain) {
  EXPECT_NO_THROW(JoinSampler::planar(ChainSpec::canonical(8, 6)));
  EXPECT_THROW(JoinSampler::planar(ChainSpec::canonical(8, 7)), std::invalid_argument);
  const JoinSampler s = JoinSampler::planar(ChainSpec::canonical(8, 6));
  EXPECT_FALSE(s.domain().has_value());
  EXPECT_TRUE(s.has_planar_factor());
}

TEST(JoinSampler, ConsumesTheAdvertisedNumberOfUniforms) {
  const JoinSampler sampler(canonical_wedge(8));
  RandomStream a(3, 0, 0);
  RandomStream b(3, 0, 0);
  (void)sampler.draw(a, 0.0, 1.0);
  for (int i = 0; i < 1 + (6 - 2) + 3; ++i) (void)b.uniform();
  EXPECT_EQ(a.uniform(), b.uniform());
}
