#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "spherebound/planar_domain.hpp"
#include "spherebound/random.hpp"

using namespace spherebound;

namespace {

double hit_fraction(const PlanarDomain& d, double half_width, int n, std::uint64_t seed) {
  RandomStream s(seed, 0, 0);
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const Point2 q{(2 * s.uniform() - 1) * half_width, (2 * s.uniform() - 1) * half_width};
    hits += d.contains(q) ? 1 : 0;
  }
  return static_cast<double>(hits) / n;
}

}  // namespace

TEST(PlanarDomain, ElementaryAreas) {
  EXPECT_NEAR(PlanarDomain::triangle({0, 0}, {2, 0}, {2, 1}).area(), 1.0, 1e-15);
  EXPECT_NEAR(PlanarDomain::disc(0.5).area(), std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(PlanarDomain::sector(2.0, 0.1, 0.4).area(), 0.6, 1e-15);
  const std::vector<Point2> square{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  EXPECT_NEAR(PlanarDomain::polygon(square).area(), 4.0, 1e-14);
}

TEST(PlanarDomain, DiscCapSquareArea) {
  // Dimension-eight truncation radii at h = m_6; the frozen value is a 50-digit evaluation.
  const double r = 2.0 / std::sqrt(63.0);
  const double a = std::sqrt(7.0) / 14.0;
  const double exact = 4.0 * (a * std::sqrt(r * r - a * a) + r * r * (std::numbers::pi / 4 - std::acos(a / r)));
  EXPECT_NEAR(PlanarDomain::disc_cap_square(r, a).area(), exact, 1e-14);
  EXPECT_NEAR(PlanarDomain::disc_cap_square(r, a).area(), 0.141902802897433, 1e-14);
  EXPECT_NEAR(PlanarDomain::disc_cap_square(1.0, 2.0).area(), std::numbers::pi, 1e-14);
  EXPECT_NEAR(PlanarDomain::disc_cap_square(2.0, 1.0).area(), 4.0, 1e-14);
}

TEST(PlanarDomain, UnionAreaIsAdditive) {
  const PlanarDomain t = PlanarDomain::triangle({0, 0}, {1, 0}, {1, 1});
  const PlanarDomain s = PlanarDomain::sector(std::sqrt(2.0), std::numbers::pi / 4, std::numbers::pi / 2);
  const PlanarDomain u = PlanarDomain::union_of({t, s});
  EXPECT_NEAR(u.area(), t.area() + s.area(), 1e-15);
  EXPECT_EQ(u.kind(), DomainKind::union_of);
  EXPECT_TRUE(u.contains({0.2, 1.2}));
  EXPECT_TRUE(u.contains({0.9, 0.1}));
  EXPECT_FALSE(u.contains({1.1, 0.1}));
}

TEST(PlanarDomain, RadialProfileAreasSumToArea) {
  const std::vector<PlanarDomain> domains{
      PlanarDomain::triangle({0, 0}, {0.3, 0}, {0.3, 0.1}),
      PlanarDomain::disc_cap_square(0.3, 0.25),
      PlanarDomain::disc_cap_polygon(0.3, {{-0.25, -0.27}, {0.26, -0.25}, {0.28, 0.26}, {-0.27, 0.25}}),
      PlanarDomain::polygon({{0, 0}, {1, 0}, {1.2, 0.8}, {0.1, 1.0}}),
  };
  for (const auto& d : domains) {
    double sum = 0.0;
    for (const auto& piece : d.radial_profile()) sum += piece.area();
    EXPECT_NEAR(sum, d.area(), 1e-14);
  }
}

TEST(PlanarDomain, AreaMatchesHitOrMiss) {
  const PlanarDomain d = PlanarDomain::disc_cap_polygon(
      0.3, {{-0.25, -0.27}, {0.26, -0.25}, {0.28, 0.26}, {-0.27, 0.25}});
  const int n = 400000;
  const double p = hit_fraction(d, 0.3, n, 11);
  const double se = std::sqrt(p * (1 - p) / n) * 0.36;
  EXPECT_NEAR(p * 0.36, d.area(), 5 * se);
}

TEST(PlanarDomain, SamplesAreInsideAndUniform) {
  const PlanarDomain d = PlanarDomain::union_of(
      {PlanarDomain::triangle({0, 0}, {1, 0}, {1, 0.5}), PlanarDomain::sector(std::hypot(1.0, 0.5), std::atan(0.5), 1.2)});
  RandomStream s(3, 0, 0);
  const int n = 200000;
  int left = 0;
  for (int i = 0; i < n; ++i) {
    const Point2 q = d.sample(s);
    ASSERT_TRUE(d.contains(q, 1e-12)) << q.x << "," << q.y;
    left += q.x < 0.5 ? 1 : 0;
  }
  // Fraction with x < 0.5, against a hit-or-miss estimate of the same region.
  const PlanarDomain strip = PlanarDomain::polygon({{0, 0}, {0.5, 0}, {0.5, 2}, {0, 2}});
  RandomStream r(4, 0, 0);
  int both = 0;
  const int m = 2000000;
  for (int i = 0; i < m; ++i) {
    const Point2 q{r.uniform() * 1.2, r.uniform() * 1.2};
    both += (d.contains(q) && strip.contains(q)) ? 1 : 0;
  }
  const double expected = both * 1.44 / m / d.area();
  EXPECT_NEAR(static_cast<double>(left) / n, expected, 0.006);
}

TEST(PlanarDomain, ContainsRespectsBoundary) {
  const PlanarDomain t = PlanarDomain::triangle({0, 0}, {1, 0}, {1, 1});
  EXPECT_TRUE(t.contains({0.5, 0.5}));
  EXPECT_TRUE(t.contains({1.0, 0.0}));
  EXPECT_FALSE(t.contains({0.5, 0.5 + 1e-9}));
  EXPECT_FALSE(PlanarDomain::disc(1.0).contains({0.8, 0.61}));
}

TEST(PlanarDomain, RejectsDegenerateInput) {
  EXPECT_THROW(PlanarDomain::disc(0.0), std::invalid_argument);
  EXPECT_THROW(PlanarDomain::disc(-1.0), std::invalid_argument);
  // Origin outside the polygon.
  EXPECT_THROW(PlanarDomain::polygon({{1, 1}, {2, 1}, {2, 2}}), std::invalid_argument);
}

TEST(RadialRule, GaussianMomentExactOnArcsAndConvergentOnLines) {
  const PlanarDomain d = PlanarDomain::disc_cap_square(0.3, 0.25);
  // int_D exp(-5|q|^2) has radial kernel k(r2) = -expm1(-5 r2) / (5 r2).
  const auto one_minus = [](double r2) { return 1.0 + std::expm1(-5.0 * r2) / (5.0 * r2); };
  const double coarse = RadialRule(d, 8).integrate(one_minus);
  const double fine = RadialRule(d, 64).integrate(one_minus);
  EXPECT_NEAR(coarse, fine, 1e-10);
  double grid = 0.0;
  for (const auto& w : polar_grid(d, 400, 40)) grid += w.weight * std::exp(-5.0 * (w.point.x * w.point.x + w.point.y * w.point.y));
  EXPECT_NEAR(fine, grid, 1e-12);
}

TEST(PolarGrid, WeightsSumToArea) {
  const PlanarDomain d = PlanarDomain::union_of(
      {PlanarDomain::triangle({0, 0}, {1, 0}, {1, 0.5}), PlanarDomain::sector(std::hypot(1.0, 0.5), std::atan(0.5), 1.2)});
  double sum = 0.0;
  for (const auto& w : polar_grid(d, 24, 6)) {
    sum += w.weight;
    EXPECT_TRUE(d.contains(w.point));
  }
  EXPECT_NEAR(sum, d.area(), 1e-13);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(8, x, w);
  double s0 = 0.0;
  double s14 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s0 += w[i];
    s14 += w[i] * std::pow(x[i], 14);
  }
  EXPECT_NEAR(s0, 2.0, 1e-14);
  EXPECT_NEAR(s14, 2.0 / 15.0, 1e-14);
}
