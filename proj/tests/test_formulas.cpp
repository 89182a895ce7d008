#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "spherebound/formulas.hpp"

using namespace spherebound;

TEST(ChainScalars, FirstLevelIsUnit) {
  const ChainScalars c = chain_scalars(1);
  EXPECT_DOUBLE_EQ(c.floor, 1.0);
  EXPECT_DOUBLE_EQ(c.height, 1.0);
}

TEST(ChainScalars, LevelEight) {
  const ChainScalars c = chain_scalars(8);
  EXPECT_NEAR(c.floor, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.height, 1.0 / 6.0, 1e-15);
}

TEST(ChainScalars, HeightsTelescopeToFloors) {
  double sum = 0.0;
  for (int i = 1; i <= 8; ++i) sum += chain_height(i) * chain_height(i);
  EXPECT_NEAR(sum, 16.0 / 9.0, 1e-12);
  for (int i = 1; i <= 200; ++i) {
    const double lhs = chain_height(i) * chain_height(i);
    const double rhs = chain_floor(i) * chain_floor(i) - chain_floor(i - 1) * chain_floor(i - 1);
    EXPECT_NEAR(lhs, rhs, 1e-14) << "i=" << i;
  }
}

TEST(ChainScalars, RejectsLevelZero) { EXPECT_THROW(chain_scalars(0), std::invalid_argument); }

TEST(FaceRadiusMap, KnownValues) {
  EXPECT_DOUBLE_EQ(face_radius_map(0.0), 1.0);
  EXPECT_NEAR(face_radius_map(1.0), 1.1547005383792515, 1e-15);
  EXPECT_NEAR(face_radius_map(chain_floor(2)), 1.2247448713915890, 1e-15);
  EXPECT_NEAR(face_radius_map(std::sqrt(2.0)), std::sqrt(2.0), 1e-15);
}

TEST(FaceRadiusMap, MapsFloorToNextFloor) {
  for (int i = 1; i <= 100; ++i) EXPECT_NEAR(face_radius_map(chain_floor(i)), chain_floor(i + 1), 1e-12);
}

TEST(FaceRadiusMap, StrictlyIncreasing) {
  double prev = face_radius_map(0.0);
  for (int i = 1; i < 1000; ++i) {
    const double v = face_radius_map(1.999 * i / 1000);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(FaceRadiusMap, RejectsOutsideDomain) {
  EXPECT_THROW(face_radius_map(-0.1), std::invalid_argument);
  EXPECT_THROW(face_radius_map(2.0), std::invalid_argument);
}

TEST(TruncationRadii, LeftEndpointInDimensionEight) {
  const TruncationRadii t = truncation_radii(8, chain_floor(6));
  EXPECT_NEAR(t.disc, 2.0 / std::sqrt(63.0), 1e-13);
  EXPECT_NEAR(t.square, std::sqrt(7.0) / 14.0, 1e-13);
  EXPECT_NEAR(t.disc / t.square, 4.0 / 3.0, 1e-12);
}

TEST(TruncationRadii, CoincideAtRegimeBoundary) {
  // Both radii equal 1/6 at h = m_7 when d = 8.
  const TruncationRadii t = truncation_radii(8, std::sqrt(14.0 / 8.0));
  EXPECT_NEAR(t.disc, 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(t.square, 1.0 / 6.0, 1e-12);
}

TEST(TruncationRadii, DiscVanishesAtTheTop) {
  const double h = std::sqrt(16.0 / 9.0) - 1e-12;
  EXPECT_LT(truncation_radii(8, h).disc, 1e-5);
  EXPECT_THROW(truncation_radii(8, std::sqrt(16.0 / 9.0)), std::invalid_argument);
  EXPECT_THROW(truncation_radii(8, chain_floor(6) - 1e-6), std::invalid_argument);
}

TEST(TruncationRadii, SquareBelowDiscInFirstRegime) {
  for (int d : {4, 8, 12, 42}) {
    const TruncationRange r = truncation_range(d);
    for (int i = 0; i < 100; ++i) {
      const double h = r.lo + (r.boundary - r.lo) * i / 100;
      const TruncationRadii t = truncation_radii(d, h);
      EXPECT_LT(t.square, t.disc) << "d=" << d << " h=" << h;
    }
  }
}

TEST(SectorGeometry, DimensionEight) {
  const SectorGeometry s = sector_geometry(8);
  EXPECT_NEAR(s.radius, 0.25197631533948482, 1e-15);
  EXPECT_NEAR(s.alpha, 0.72273424781341561, 1e-15);
  EXPECT_NEAR(s.theta, 0.062663915584032698, 1e-15);
}

TEST(SectorGeometry, RadiusIsTerminalDiagonal) {
  for (int d = 4; d <= 200; ++d) {
    const SectorGeometry s = sector_geometry(d);
    const double diag = chain_height(d - 1) * chain_height(d - 1) + chain_height(d) * chain_height(d);
    EXPECT_NEAR(s.radius * s.radius, diag, 1e-14);
    EXPECT_GT(s.theta, 0.0);
    EXPECT_LT(s.alpha, std::numbers::pi / 4);
  }
  EXPECT_THROW(sector_geometry(3), std::invalid_argument);
}

TEST(ExtremalAngles, QuarticVanishesAtItsRoots) {
  for (int d : {4, 5, 8, 12, 42}) EXPECT_NEAR(extremal_quartic(d, std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(extremal_quartic(8, std::sqrt(8.0 / 7.0)), 0.0, 1e-12);
}

TEST(ExtremalAngles, QuarticNegativeBetweenRoots) {
  for (int d : {4, 8, 12, 42}) {
    const double a = std::sqrt(2.0 * (d - 4.0) / (d - 1.0));
    const double b = std::sqrt(2.0);
    for (int i = 0; i < 10000; ++i) {
      const double x = a + (b - a) * (i + 0.5) / 10000;
      ASSERT_LT(extremal_quartic(d, x), 0.0) << "d=" << d << " x=" << x;
    }
  }
}

TEST(ExtremalAngles, LeftEndpointGivesCosPhiStar) {
  for (int d : {4, 8, 12, 42}) {
    const ExtremalAngles a = extremal_angles(d, extremal_x_range(d).lo);
    const double cos_gap = -std::cos(std::acos(a.cos_rho) + std::acos(a.cos_tau));
    EXPECT_NEAR(cos_gap, extremal_cos_phi(d), 1e-8) << "d=" << d;
  }
}

TEST(ExtremalAngles, RejectsOutsideInterval) {
  const Interval r = extremal_x_range(8);
  EXPECT_THROW(extremal_angles(8, r.lo - 1e-6), std::invalid_argument);
  EXPECT_THROW(extremal_angles(8, r.hi + 1e-6), std::invalid_argument);
  EXPECT_NO_THROW(extremal_angles(8, r.hi + 1e-13));
}

TEST(ExtremalCosPhi, KnownValues) {
  EXPECT_NEAR(extremal_cos_phi(8), 5.0 / (2.0 * std::sqrt(7.0)), 1e-15);
  EXPECT_NEAR(extremal_cos_phi(4), 0.95257934441568037, 1e-15);
  double prev = extremal_cos_phi(4);
  for (int d = 5; d < 500; ++d) {
    const double c = extremal_cos_phi(d);
    EXPECT_LT(c, prev);
    EXPECT_GT(c, 2.0 * std::sqrt(2.0) / 3.0);
    prev = c;
  }
  EXPECT_THROW(extremal_cos_phi(3), std::invalid_argument);
}

TEST(FiveSideBound, QuadraticThreshold) {
  EXPECT_NEAR(five_side_quadratic(8), 3.9206842161907, 1e-10);
  EXPECT_NEAR(five_side_quadratic(7), 4.016512026667, 1e-10);
  for (int d = 8; d <= 1000; ++d) EXPECT_LE(five_side_quadratic(d), 4.0) << "d=" << d;
  EXPECT_GT(five_side_quadratic(7), 4.0);
}

TEST(FiveSideBound, CornerEqualsQuadratic) {
  for (int d : {4, 8, 10, 16, 42}) {
    const double phi = std::acos(extremal_cos_phi(d));
    EXPECT_NEAR(five_side_bound(d, phi, phi).g, five_side_quadratic(d), 1e-12) << "d=" << d;
  }
}

TEST(FiveSideBound, OriginMatchesTermByTermAssembly) {
  const double d = 8.0;
  const double c = std::cos(2.0 * std::numbers::pi / 5.0);
  const double l2 = 2.0 * d / (d + 1.0);
  const double b2 = 2.0 * (d - 2.0) / (d - 1.0);
  const double expected = (2.0 - c) * 4.0 * d / (d + 1.0) - 2.0 * (1.0 - c) * b2 - 4.0 * d / (d + 1.0) * c +
                          2.0 * (1.0 - c) * 2.0 * std::sqrt(l2) * std::sqrt(l2 - b2);
  EXPECT_NEAR(five_side_bound(8, 0.0, 0.0).g, expected, 1e-13);
  EXPECT_NEAR(expected, 3.4731662, 1e-7);
}

TEST(FiveSideBound, GoldenCosine) {
  EXPECT_NEAR(std::cos(2.0 * std::numbers::pi / 5.0), (std::sqrt(5.0) - 1.0) / 4.0, 1e-15);
}

TEST(FiveSideBound, GridNeverExceedsQuadratic) {
  for (int d : {8, 10, 16, 42}) {
    const double phi = std::acos(extremal_cos_phi(d));
    const double q = five_side_quadratic(d);
    for (int i = 0; i < 200; ++i) {
      for (int j = 0; j < 200; ++j) {
        ASSERT_LE(five_side_bound(d, phi * i / 199, phi * j / 199).g, q + 1e-9);
      }
    }
  }
}

TEST(FiveSideBound, RejectsAnglesOutsideSquare) {
  const double phi = std::acos(extremal_cos_phi(8));
  EXPECT_THROW(five_side_bound(8, -0.01, 0.0), std::invalid_argument);
  EXPECT_THROW(five_side_bound(8, 0.0, phi + 1e-6), std::invalid_argument);
}

TEST(CenterDistanceBound, KnownValues) {
  EXPECT_NEAR(center_distance_bound(3), 1.9318516525781366, 1e-15);
  EXPECT_NEAR(center_distance_bound(8), 2.0 / std::sqrt(63.0) + 4.0 / 3.0, 1e-15);
  EXPECT_THROW(center_distance_bound(2), std::invalid_argument);
}

TEST(CenterDistanceBound, DecreasingAndBelowTwo) {
  double prev = center_distance_bound(3);
  for (int d = 4; d <= 1000; ++d) {
    const double v = center_distance_bound(d);
    EXPECT_LT(v, prev);
    EXPECT_LE(v, 2.0);
    prev = v;
  }
  EXPECT_GT(center_distance_bound(1000), std::sqrt(2.0));
}

TEST(ReferenceBounds, DimensionEight) {
  const ReferenceBounds r = reference_bounds(8);
  EXPECT_NEAR(r.daniels, 0.18393972058572116, 1e-15);
  EXPECT_NEAR(r.omega, 4.0587121264167682, 1e-14);
  EXPECT_NEAR(r.ball_lower, 0.054910480417075081, 1e-15);
  EXPECT_NEAR(r.kl, std::pow(2.0, -0.599 * 8), 1e-15);
}

TEST(ReferenceBounds, LowDimensions) {
  EXPECT_NEAR(reference_bounds(2).omega, std::numbers::pi, 1e-15);
  EXPECT_NEAR(unit_ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-15);
  EXPECT_NEAR(riemann_zeta(2), std::numbers::pi * std::numbers::pi / 6.0, 1e-15);
  EXPECT_NEAR(riemann_zeta(8), std::pow(std::numbers::pi, 8) / 9450.0, 1e-15);
  EXPECT_THROW(reference_bounds(1), std::invalid_argument);
}

TEST(ReferenceBounds, AllPositiveAndBallBelowKlEventually) {
  for (int d = 2; d <= 200; ++d) {
    const ReferenceBounds r = reference_bounds(d);
    EXPECT_GT(r.daniels, 0.0);
    EXPECT_GT(r.kl, 0.0);
    EXPECT_GT(r.ball_lower, 0.0);
    EXPECT_GT(r.omega, 0.0);
  }
  for (int d = 40; d <= 200; ++d) EXPECT_LT(reference_bounds(d).ball_lower, reference_bounds(d).kl);
}

TEST(TruncationRatio, DecreasingOnFirstRegime) {
  for (int d : {8, 12, 42}) {
    const TruncationRange r = truncation_range(d);
    const double step = (r.boundary - r.lo) / 1000;
    double prev = truncation_radii(d, r.lo).disc / truncation_radii(d, r.lo).square;
    EXPECT_NEAR(prev, std::sqrt(2.0 * d / (d + 1.0)), 1e-9);
    for (int i = 1; i < 1000; ++i) {
      const TruncationRadii t = truncation_radii(d, r.lo + i * step);
      EXPECT_LT(t.disc / t.square, prev);
      prev = t.disc / t.square;
    }
  }
}
