// Closed-form scalars behind the wedge bound: chain floors and heights, the
// face-radius recursion, truncation radii, the planar sector, and the
// extremal-angle and five-side estimates used to bound the number of short
// sides of a two-dimensional Voronoi face.
//
// Everything here is pure double-precision arithmetic and safe to call from
// any thread.
#pragma once

#include <string_view>

namespace spherebound {

/// Closed intervals are checked with this slack so that analytically exact
/// endpoints are not rejected by rounding.
inline constexpr double kEndpointTolerance = 1e-12;

/// Label attached to every asymptotic reference curve in reports.
inline constexpr std::string_view kAsymptoticLabel = "asymptotic, not certified";

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] bool contains(double x, double tol = kEndpointTolerance) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

/// Floor m_i on the distance from a cell centre to its (d-i)-faces, and the
/// i-th orthoscheme height h_i. Both are independent of the ambient dimension.
struct ChainScalars {
  double floor = 0.0;   // sqrt(2i/(i+1))
  double height = 0.0;  // sqrt(2/(i(i+1)))
};

ChainScalars chain_scalars(int level);

/// m_i with the convention m_0 = 0.
double chain_floor(int level);
double chain_height(int level);

/// 2/sqrt(4 - R^2): lower bound on the circumradius of a face one dimension
/// down, given R for the current face. Maps m_i to m_{i+1}; sqrt(2) is its
/// fixed point.
double face_radius_map(double radius);

/// Radii of the two discs in the terminal 2-plane at distance h from the
/// centre: `disc` is the trace of the ball of radius sqrt(2d/(d+1)) and
/// `square` is the inradius any admissible side must respect.
struct TruncationRadii {
  double disc = 0.0;    // sqrt(2d/(d+1) - h^2)
  double square = 0.0;  // (2 - h^2)/sqrt(4 - h^2)
};

/// h-range split at the point where both radii coincide.
struct TruncationRange {
  double lo = 0.0;        // m_{d-2}
  double boundary = 0.0;  // m_{d-1}, first h of the disc-only regime
  double hi = 0.0;        // sqrt(2d/(d+1)), exclusive
};

TruncationRange truncation_range(int dim);
TruncationRadii truncation_radii(int dim, double h);

/// The circular sector that completes the terminal triangle of the canonical
/// chain to a planar angle of pi/4.
struct SectorGeometry {
  double radius = 0.0;  // 2/sqrt(d^2 - 1) = |w_d - w_{d-2}|
  double alpha = 0.0;   // triangle angle at w_{d-2}
  double theta = 0.0;   // pi/4 - alpha
};

SectorGeometry sector_geometry(int dim);

/// Angles of the extremal 3-dimensional configuration, with the circumradius
/// l fixed at sqrt(2d/(d+1)); `f` is the quartic whose sign decides the
/// monotonicity of rho + tau in x.
struct ExtremalAngles {
  double cos_rho = 0.0;
  double cos_tau = 0.0;
  double f = 0.0;
};

/// Admissible x range [sqrt(2(d-3)/(d-2)), sqrt(2(d-2)/(d-1))].
Interval extremal_x_range(int dim);
ExtremalAngles extremal_angles(int dim, double x);

/// The quartic x^4 - (4d-10)/(d-1) x^2 + (4d-16)/(d-1), defined for any x.
double extremal_quartic(int dim, double x);

/// Lower bound (sqrt2/3)(2d-1)/sqrt(d(d-1)) on cos(phi) for the tilt angles.
double extremal_cos_phi(int dim);

/// Upper bound G(phi_i, phi_j) on the squared distance between two centres
/// sharing a short side pair, with the base-point norm at its floor, and the
/// closed-form maximum of G over the admissible square.
struct FiveSideBound {
  double g = 0.0;
  double quadratic = 0.0;
};

FiveSideBound five_side_bound(int dim, double phi_i, double phi_j);
double five_side_quadratic(int dim);

/// sqrt(2d/(d+1) - 2(d-2)/(d-1)) + sqrt(2d/(d+1)); stays below 2 for d >= 3.
double center_distance_bound(int dim);

/// Reference curves for context tables. `daniels` and `kl` are asymptotic
/// shapes with the o(1) terms dropped (see kAsymptoticLabel).
struct ReferenceBounds {
  double daniels = 0.0;     // (d/e) 2^{-d/2}
  double kl = 0.0;          // 2^{-0.599 d}
  double ball_lower = 0.0;  // (d-1) zeta(d) / 2^{d-1}
  double omega = 0.0;       // volume of the unit d-ball
};

ReferenceBounds reference_bounds(int dim);
double unit_ball_volume(int dim);
double riemann_zeta(int s);

}  // namespace spherebound
