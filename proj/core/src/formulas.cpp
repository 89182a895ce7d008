#include "spherebound/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/zeta.hpp>

namespace spherebound {
namespace {

void require_dim(int dim, int min_dim, const char* what) {
  if (dim < min_dim) {
    throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(dim) +
                                " below minimum " + std::to_string(min_dim));
  }
}

double cos_two_pi_fifths() { return std::cos(2.0 * std::numbers::pi / 5.0); }

double sq(double x) { return x * x; }

}  // namespace

ChainScalars chain_scalars(int level) {
  if (level < 1) {
    throw std::invalid_argument("chain_scalars: level must be >= 1, got " + std::to_string(level));
  }
  const double i = level;
  return {std::sqrt(2.0 * i / (i + 1.0)), std::sqrt(2.0 / (i * (i + 1.0)))};
}

double chain_floor(int level) {
  if (level == 0) return 0.0;
  return chain_scalars(level).floor;
}

double chain_height(int level) { return chain_scalars(level).height; }

double face_radius_map(double radius) {
  if (!(radius >= 0.0) || radius >= 2.0) {
    throw std::invalid_argument("face_radius_map: radius must lie in [0, 2)");
  }
  return 2.0 / std::sqrt(4.0 - radius * radius);
}

TruncationRange truncation_range(int dim) {
  require_dim(dim, 4, "truncation_range");
  const double d = dim;
  return {chain_floor(dim - 2), chain_floor(dim - 1), std::sqrt(2.0 * d / (d + 1.0))};
}

TruncationRadii truncation_radii(int dim, double h) {
  const TruncationRange range = truncation_range(dim);
  if (!(h >= range.lo - kEndpointTolerance) || !(h < range.hi)) {
    throw std::invalid_argument("truncation_radii: h outside [m_{d-2}, sqrt(2d/(d+1)))");
  }
  const double h2 = h * h;
  const double disc = std::sqrt(std::max(0.0, sq(range.hi) - h2));
  const double square = (2.0 - h2) / std::sqrt(4.0 - h2);
  return {disc, square};
}

SectorGeometry sector_geometry(int dim) {
  require_dim(dim, 4, "sector_geometry");
  const double d = dim;
  SectorGeometry s;
  s.radius = 2.0 / std::sqrt(d * d - 1.0);
  s.alpha = std::atan(std::sqrt((d - 1.0) / (d + 1.0)));
  s.theta = std::numbers::pi / 4.0 - s.alpha;
  return s;
}

Interval extremal_x_range(int dim) {
  require_dim(dim, 4, "extremal_x_range");
  const double d = dim;
  return {std::sqrt(2.0 * (d - 3.0) / (d - 2.0)), std::sqrt(2.0 * (d - 2.0) / (d - 1.0))};
}

double extremal_quartic(int dim, double x) {
  require_dim(dim, 4, "extremal_quartic");
  const double d = dim;
  const double x2 = x * x;
  return x2 * x2 - (4.0 * d - 10.0) / (d - 1.0) * x2 + (4.0 * d - 16.0) / (d - 1.0);
}

ExtremalAngles extremal_angles(int dim, double x) {
  const Interval range = extremal_x_range(dim);
  if (!range.contains(x)) {
    throw std::invalid_argument("extremal_angles: x outside the admissible interval");
  }
  const double d = dim;
  const double l2 = 2.0 * d / (d + 1.0);
  const double x2 = x * x;
  const double num = l2 * (4.0 - x2) - 4.0;
  const double den = (4.0 - x2) * (l2 - x2);
  if (!(num > 0.0) || !(den > 0.0)) {
    throw std::domain_error("extremal_angles: nonpositive radicand");
  }
  ExtremalAngles a;
  a.cos_rho = std::sqrt(num / den);
  a.cos_tau = (l2 - 2.0) / (std::sqrt(l2) * std::sqrt(l2 - x2));
  a.f = extremal_quartic(dim, x);
  return a;
}

double extremal_cos_phi(int dim) {
  require_dim(dim, 4, "extremal_cos_phi");
  const double d = dim;
  return std::numbers::sqrt2 / 3.0 * (2.0 * d - 1.0) / std::sqrt(d * (d - 1.0));
}

FiveSideBound five_side_bound(int dim, double phi_i, double phi_j) {
  const double phi_max = std::acos(extremal_cos_phi(dim));
  const Interval range{0.0, phi_max};
  if (!range.contains(phi_i) || !range.contains(phi_j)) {
    throw std::invalid_argument("five_side_bound: angles outside [0, phi*]");
  }
  const double d = dim;
  const double c = cos_two_pi_fifths();
  const double l2 = 2.0 * d / (d + 1.0);
  const double b2 = 2.0 * (d - 2.0) / (d - 1.0);
  const double four_l2 = 2.0 * l2;  // 4d/(d+1)

  FiveSideBound out;
  out.g = (2.0 - c) * four_l2 - 2.0 * (1.0 - c) * b2 +
          four_l2 * std::sin(phi_i) * std::sin(phi_j) -
          four_l2 * c * std::cos(phi_i) * std::cos(phi_j) +
          2.0 * (1.0 - c) * std::sqrt(l2) * (std::cos(phi_i) + std::cos(phi_j)) *
              std::sqrt(l2 - b2);
  out.quadratic = five_side_quadratic(dim);
  return out;
}

double five_side_quadratic(int dim) {
  require_dim(dim, 4, "five_side_quadratic");
  const double d = dim;
  const double c = cos_two_pi_fifths();
  return ((40.0 - 32.0 * c) * d * d + (56.0 - 64.0 * c) * d + (16.0 - 32.0 * c)) /
         (9.0 * (d * d - 1.0));
}

double center_distance_bound(int dim) {
  require_dim(dim, 3, "center_distance_bound");
  const double d = dim;
  const double l2 = 2.0 * d / (d + 1.0);
  return std::sqrt(l2 - 2.0 * (d - 2.0) / (d - 1.0)) + std::sqrt(l2);
}

double riemann_zeta(int s) {
  if (s < 2) throw std::invalid_argument("riemann_zeta: s must be >= 2");
  return boost::math::zeta(static_cast<double>(s));
}

double unit_ball_volume(int dim) {
  require_dim(dim, 1, "unit_ball_volume");
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

ReferenceBounds reference_bounds(int dim) {
  require_dim(dim, 2, "reference_bounds");
  const double d = dim;
  ReferenceBounds r;
  r.daniels = d / std::numbers::e * std::exp2(-0.5 * d);
  r.kl = std::exp2(-0.599 * d);
  r.ball_lower = (d - 1.0) * riemann_zeta(dim) * std::exp2(-(d - 1.0));
  r.omega = unit_ball_volume(dim);
  return r;
}

}  // namespace spherebound
