#include "spherebound/planar_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spherebound {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
Point2 sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
double norm(Point2 a) { return std::hypot(a.x, a.y); }

double shoelace(const std::vector<Point2>& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) twice += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * twice;
}

// Counter-clockwise convex polygon with the origin in its closure.
std::vector<Point2> normalized_polygon(std::vector<Point2> v) {
  if (v.size() < 3) throw std::invalid_argument("polygon: need at least three vertices");
  const double signed_area = shoelace(v);
  if (std::abs(signed_area) <= kBoundaryTolerance) {
    throw std::invalid_argument("polygon: degenerate (zero area)");
  }
  if (signed_area < 0.0) std::reverse(v.begin(), v.end());
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    const Point2 e = sub(b, a);
    if (cross(e, sub(c, b)) < -kBoundaryTolerance * norm(e)) {
      throw std::invalid_argument("polygon: not convex");
    }
    if (cross(e, sub(Point2{}, a)) < -kBoundaryTolerance * norm(e)) {
      throw std::invalid_argument("polygon: origin outside the closed polygon");
    }
  }
  return v;
}

std::vector<RadialPiece> polygon_pieces(const std::vector<Point2>& v) {
  std::vector<RadialPiece> pieces;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % n];
    const Point2 e = sub(b, a);
    const double len = norm(e);
    const Point2 normal{e.y / len, -e.x / len};
    const double offset = dot(normal, a);
    if (offset <= kBoundaryTolerance) continue;  // edge line through the origin
    RadialPiece p;
    p.boundary = RadialPiece::Boundary::line;
    p.theta_lo = std::atan2(a.y, a.x);
    p.theta_hi = p.theta_lo + std::atan2(cross(a, b), dot(a, b));
    p.offset = offset;
    const double nu = std::atan2(normal.y, normal.x);
    p.normal_angle = p.theta_lo - std::remainder(p.theta_lo - nu, kTwoPi);
    pieces.push_back(p);
  }
  return pieces;
}

std::vector<RadialPiece> clip_to_disc(const std::vector<RadialPiece>& in, double radius) {
  std::vector<RadialPiece> out;
  auto push = [&](RadialPiece p, double lo, double hi) {
    if (hi - lo <= 1e-15) return;
    p.theta_lo = lo;
    p.theta_hi = hi;
    out.push_back(p);
  };
  for (const RadialPiece& p : in) {
    RadialPiece arc;
    arc.boundary = RadialPiece::Boundary::arc;
    arc.radius = radius;
    if (p.boundary == RadialPiece::Boundary::arc) {
      arc.radius = std::min(radius, p.radius);
      push(arc, p.theta_lo, p.theta_hi);
      continue;
    }
    if (p.offset >= radius) {
      push(arc, p.theta_lo, p.theta_hi);
      continue;
    }
    const double beta = std::acos(p.offset / radius);
    const double a1 = p.normal_angle - beta;
    const double a2 = p.normal_angle + beta;
    push(arc, p.theta_lo, std::min(p.theta_hi, a1));
    push(p, std::max(p.theta_lo, a1), std::min(p.theta_hi, a2));
    push(arc, std::max(p.theta_lo, a2), p.theta_hi);
  }
  return out;
}

bool polygon_contains(const std::vector<Point2>& v, Point2 q, double tol) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e = sub(v[(i + 1) % n], v[i]);
    if (cross(e, sub(q, v[i])) < -tol * norm(e)) return false;
  }
  return true;
}

}  // namespace

double RadialPiece::radius_at(double theta) const {
  if (boundary == Boundary::arc) return radius;
  return offset / std::cos(theta - normal_angle);
}

double RadialPiece::area() const {
  if (boundary == Boundary::arc) return 0.5 * radius * radius * (theta_hi - theta_lo);
  return 0.5 * offset * offset *
         (std::tan(theta_hi - normal_angle) - std::tan(theta_lo - normal_angle));
}

double RadialPiece::angle_at_fraction(double u) const {
  if (boundary == Boundary::arc) return theta_lo + u * (theta_hi - theta_lo);
  const double t0 = std::tan(theta_lo - normal_angle);
  const double t1 = std::tan(theta_hi - normal_angle);
  const double theta = normal_angle + std::atan(t0 + u * (t1 - t0));
  return std::clamp(theta, theta_lo, theta_hi);
}

PlanarDomain PlanarDomain::triangle(Point2 a, Point2 b, Point2 c) {
  PlanarDomain d;
  d.kind_ = DomainKind::triangle;
  d.vertices_ = normalized_polygon({a, b, c});
  d.pieces_ = polygon_pieces(d.vertices_);
  d.area_ = shoelace(d.vertices_);
  d.finalize();
  return d;
}

PlanarDomain PlanarDomain::sector(double radius, double theta_lo, double theta_hi) {
  if (!(radius > 0.0)) throw std::invalid_argument("sector: radius must be positive");
  if (!(theta_hi > theta_lo) || theta_hi - theta_lo > kTwoPi + kBoundaryTolerance) {
    throw std::invalid_argument("sector: need 0 < theta_hi - theta_lo <= 2 pi");
  }
  PlanarDomain d;
  d.kind_ = DomainKind::sector;
  d.radius_ = radius;
  d.theta_lo_ = theta_lo;
  d.theta_hi_ = theta_hi;
  RadialPiece p;
  p.theta_lo = theta_lo;
  p.theta_hi = theta_hi;
  p.radius = radius;
  d.pieces_ = {p};
  d.area_ = 0.5 * radius * radius * (theta_hi - theta_lo);
  d.finalize();
  return d;
}

PlanarDomain PlanarDomain::disc(double radius) {
  PlanarDomain d = sector(radius, 0.0, kTwoPi);
  d.kind_ = DomainKind::disc;
  d.area_ = std::numbers::pi * radius * radius;
  return d;
}

PlanarDomain PlanarDomain::polygon(std::vector<Point2> vertices) {
  PlanarDomain d;
  d.kind_ = DomainKind::polygon;
  d.vertices_ = normalized_polygon(std::move(vertices));
  d.pieces_ = polygon_pieces(d.vertices_);
  d.area_ = shoelace(d.vertices_);
  d.finalize();
  return d;
}

PlanarDomain PlanarDomain::disc_cap_polygon(double disc_radius, std::vector<Point2> vertices) {
  if (!(disc_radius > 0.0)) throw std::invalid_argument("disc_cap_polygon: radius must be positive");
  PlanarDomain d;
  d.kind_ = DomainKind::disc_cap_polygon;
  d.radius_ = disc_radius;
  d.vertices_ = normalized_polygon(std::move(vertices));
  d.pieces_ = clip_to_disc(polygon_pieces(d.vertices_), disc_radius);
  // Circular-segment decomposition: arc slices are sectors, line slices triangles.
  d.area_ = 0.0;
  for (const RadialPiece& p : d.pieces_) d.area_ += p.area();
  d.finalize();
  return d;
}

PlanarDomain PlanarDomain::disc_cap_square(double disc_radius, double half_width) {
  if (!(half_width > 0.0)) throw std::invalid_argument("disc_cap_square: half-width must be positive");
  const double w = half_width;
  PlanarDomain d = disc_cap_polygon(disc_radius, {{w, -w}, {w, w}, {-w, w}, {-w, -w}});
  d.kind_ = DomainKind::disc_cap_square;
  return d;
}

PlanarDomain PlanarDomain::union_of(std::vector<PlanarDomain> parts) {
  if (parts.empty()) throw std::invalid_argument("union_of: no parts");
  PlanarDomain d;
  d.kind_ = DomainKind::union_of;
  struct Span {
    double lo, hi;
    std::size_t part;
  };
  std::vector<Span> spans;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const RadialPiece& p : parts[i].pieces_) {
      d.pieces_.push_back(p);
      const double lo = p.theta_lo - kTwoPi * std::floor(p.theta_lo / kTwoPi);
      const double width = p.theta_hi - p.theta_lo;
      spans.push_back({lo, lo + width, i});
      spans.push_back({lo + kTwoPi, lo + kTwoPi + width, i});
    }
    d.area_ += parts[i].area_;
  }
  const double slack = 1e-9;
  for (std::size_t a = 0; a < spans.size(); ++a) {
    for (std::size_t b = a + 1; b < spans.size(); ++b) {
      if (spans[a].part == spans[b].part) continue;
      const double overlap = std::min(spans[a].hi, spans[b].hi) - std::max(spans[a].lo, spans[b].lo);
      if (overlap > slack) {
        throw std::invalid_argument("union_of: parts overlap in angle about the origin");
      }
    }
  }
  d.parts_ = std::move(parts);
  d.finalize();
  return d;
}

void PlanarDomain::finalize() {
  piece_cdf_.clear();
  double acc = 0.0;
  for (const RadialPiece& p : pieces_) {
    acc += p.area();
    piece_cdf_.push_back(acc);
  }
  if (!(area_ > 0.0) || pieces_.empty()) throw std::invalid_argument("planar domain: empty");
}

bool PlanarDomain::contains(Point2 q, double tol) const {
  switch (kind_) {
    case DomainKind::triangle:
    case DomainKind::polygon:
      return polygon_contains(vertices_, q, tol);
    case DomainKind::disc:
      return norm(q) <= radius_ + tol;
    case DomainKind::sector: {
      const double r = norm(q);
      if (r > radius_ + tol) return false;
      if (r <= tol) return true;
      const double phi = std::atan2(q.y, q.x);
      const double rel = phi - theta_lo_ - kTwoPi * std::floor((phi - theta_lo_) / kTwoPi);
      const double slack = tol / r;
      return rel <= theta_hi_ - theta_lo_ + slack || rel >= kTwoPi - slack;
    }
    case DomainKind::disc_cap_square:
    case DomainKind::disc_cap_polygon:
      return norm(q) <= radius_ + tol && polygon_contains(vertices_, q, tol);
    case DomainKind::union_of:
      return std::any_of(parts_.begin(), parts_.end(),
                         [&](const PlanarDomain& p) { return p.contains(q, tol); });
  }
  return false;
}

Point2 PlanarDomain::sample(double u_piece, double u_angle, double u_radius) const {
  const double target = u_piece * piece_cdf_.back();
  auto it = std::upper_bound(piece_cdf_.begin(), piece_cdf_.end(), target);
  const std::size_t k = std::min<std::size_t>(it - piece_cdf_.begin(), pieces_.size() - 1);
  const RadialPiece& p = pieces_[k];
  const double theta = p.angle_at_fraction(u_angle);
  const double r = p.radius_at(theta) * std::sqrt(u_radius);
  return {r * std::cos(theta), r * std::sin(theta)};
}

Point2 PlanarDomain::sample(RandomStream& stream) const {
  const double u0 = stream.uniform();
  const double u1 = stream.uniform();
  const double u2 = stream.uniform();
  return sample(u0, u1, u2);
}

double PlanarDomain::max_radius() const {
  double r = 0.0;
  for (const RadialPiece& p : pieces_) {
    r = std::max({r, p.radius_at(p.theta_lo), p.radius_at(p.theta_hi)});
  }
  return r;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

RadialRule::RadialRule(const PlanarDomain& domain, int nodes) : area_(domain.area()) {
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  for (const RadialPiece& p : domain.radial_profile()) {
    if (p.boundary == RadialPiece::Boundary::arc) {
      weight_.push_back(0.5 * p.radius * p.radius * (p.theta_hi - p.theta_lo));
      r2_.push_back(p.radius * p.radius);
      continue;
    }
    const double half = 0.5 * (p.theta_hi - p.theta_lo);
    const double mid = 0.5 * (p.theta_hi + p.theta_lo);
    for (int i = 0; i < nodes; ++i) {
      const double r = p.radius_at(mid + half * gx[i]);
      weight_.push_back(half * gw[i] * 0.5 * r * r);
      r2_.push_back(r * r);
    }
  }
}

std::vector<WeightedPoint> polar_grid(const PlanarDomain& domain, int angular, int radial) {
  const auto pieces = domain.radial_profile();
  double total_width = 0.0;
  for (const RadialPiece& p : pieces) total_width += p.theta_hi - p.theta_lo;
  std::vector<double> rx, rw;
  gauss_legendre(radial, rx, rw);
  std::vector<WeightedPoint> out;
  for (const RadialPiece& p : pieces) {
    const double width = p.theta_hi - p.theta_lo;
    const int n_theta = std::max(2, static_cast<int>(std::lround(angular * width / total_width)));
    std::vector<double> tx, tw;
    gauss_legendre(n_theta, tx, tw);
    for (int i = 0; i < n_theta; ++i) {
      const double theta = p.theta_lo + 0.5 * width * (tx[i] + 1.0);
      const double wt = 0.5 * width * tw[i];
      const double big_r = p.radius_at(theta);
      for (int j = 0; j < radial; ++j) {
        const double r = 0.5 * big_r * (rx[j] + 1.0);
        const double wr = 0.5 * big_r * rw[j] * r;
        out.push_back({{r * std::cos(theta), r * std::sin(theta)}, wt * wr});
      }
    }
  }
  return out;
}

}  // namespace spherebound
