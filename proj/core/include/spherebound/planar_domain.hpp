// Two-dimensional base regions in the terminal plane of an orthoscheme chain.
//
// Coordinates are local: the origin is the chain endpoint (the foot of the
// perpendicular from the cell centre), so every supported region is
// star-shaped about the origin. Internally each region is compiled into a
// list of angular pieces on which the boundary is either a circular arc about
// the origin or a straight line; area, sampling and radial integrals all run
// off that list.
#pragma once

#include <span>
#include <vector>

#include "spherebound/random.hpp"

namespace spherebound {

inline constexpr double kBoundaryTolerance = 1e-12;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class DomainKind { triangle, sector, disc, polygon, disc_cap_square, disc_cap_polygon, union_of };

/// Angular slice [theta_lo, theta_hi] of a star-shaped region. The boundary
/// radius is constant (`arc`) or offset / cos(theta - normal_angle) (`line`).
struct RadialPiece {
  enum class Boundary { arc, line };

  double theta_lo = 0.0;
  double theta_hi = 0.0;
  Boundary boundary = Boundary::arc;
  double radius = 0.0;        // arc
  double normal_angle = 0.0;  // line; theta - normal_angle stays inside (-pi/2, pi/2)
  double offset = 0.0;        // line

  [[nodiscard]] double radius_at(double theta) const;
  [[nodiscard]] double area() const;
  /// Angle whose partial area fraction is u, for u in [0, 1].
  [[nodiscard]] double angle_at_fraction(double u) const;
};

class PlanarDomain {
 public:
  /// Triangle with the origin in its closure.
  static PlanarDomain triangle(Point2 a, Point2 b, Point2 c);
  /// Sector of the origin-centred disc between two polar angles.
  static PlanarDomain sector(double radius, double theta_lo, double theta_hi);
  static PlanarDomain disc(double radius);
  /// Convex polygon with the origin in its closure; vertices in either orientation.
  static PlanarDomain polygon(std::vector<Point2> vertices);
  /// Origin-centred disc intersected with the axis-aligned square of the given half-width.
  static PlanarDomain disc_cap_square(double disc_radius, double half_width);
  static PlanarDomain disc_cap_polygon(double disc_radius, std::vector<Point2> vertices);
  /// Union of parts whose angular supports do not overlap.
  static PlanarDomain union_of(std::vector<PlanarDomain> parts);

  [[nodiscard]] DomainKind kind() const { return kind_; }
  [[nodiscard]] double area() const { return area_; }
  [[nodiscard]] bool contains(Point2 q, double tol = kBoundaryTolerance) const;

  /// Uniform point; consumes exactly three uniforms from `u`.
  [[nodiscard]] Point2 sample(double u_piece, double u_angle, double u_radius) const;
  [[nodiscard]] Point2 sample(RandomStream& stream) const;

  [[nodiscard]] std::span<const RadialPiece> radial_profile() const { return pieces_; }
  [[nodiscard]] double max_radius() const;
  [[nodiscard]] std::span<const Point2> vertices() const { return vertices_; }
  [[nodiscard]] double disc_radius() const { return radius_; }
  [[nodiscard]] std::span<const PlanarDomain> parts() const { return parts_; }

 private:
  PlanarDomain() = default;
  void finalize();

  DomainKind kind_ = DomainKind::disc;
  std::vector<Point2> vertices_;  // counter-clockwise
  double radius_ = 0.0;
  double theta_lo_ = 0.0;
  double theta_hi_ = 0.0;
  std::vector<PlanarDomain> parts_;
  std::vector<RadialPiece> pieces_;
  std::vector<double> piece_cdf_;
  double area_ = 0.0;
};

/// Flattened Gauss-Legendre rule for integrals of the form
///   sum over pieces of  int (R(theta)^2 / 2) k(R(theta)^2) dtheta
/// with k(0) = 1. Arc pieces are exact (a single entry); line pieces use
/// `nodes` points. The integral is evaluated as
///   area - sum_e weight_e * (1 - k(r2_e)),
/// which keeps the polygonal area exact whatever the node count.
class RadialRule {
 public:
  RadialRule(const PlanarDomain& domain, int nodes);

  template <class OneMinusKernel>
  [[nodiscard]] double integrate(OneMinusKernel&& one_minus_k) const {
    double correction = 0.0;
    for (std::size_t e = 0; e < weight_.size(); ++e) correction += weight_[e] * one_minus_k(r2_[e]);
    return area_ - correction;
  }

  [[nodiscard]] double area() const { return area_; }
  [[nodiscard]] std::size_t size() const { return weight_.size(); }

 private:
  double area_ = 0.0;
  std::vector<double> weight_;
  std::vector<double> r2_;
};

/// Polar product rule over a domain: `angular` Gauss nodes split across the
/// pieces in proportion to their angular width (at least two each) times
/// `radial` nodes on [0, R(theta)] with the r dr weight. Weights sum to the area.
struct WeightedPoint {
  Point2 point;
  double weight = 0.0;
};

std::vector<WeightedPoint> polar_grid(const PlanarDomain& domain, int angular, int radial);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace spherebound
