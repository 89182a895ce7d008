// Orthoscheme chains in canonical coordinates and the cones built over them.
//
// A chain of norms xi_1 < ... < xi_k places its vertices at
//   w_j = (eta_1, ..., eta_j, 0, ..., 0),   eta_1 = xi_1,  eta_j^2 = xi_j^2 - xi_{j-1}^2,
// so the orthoscheme property (w_j - w_i) . w_i = 0 holds by construction and
// every membership test reduces to coordinate comparisons.
#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "spherebound/planar_domain.hpp"
#include "spherebound/random.hpp"

namespace spherebound {

class ChainSpec {
 public:
  /// Validates strict monotonicity and the floors xi_i >= m_i.
  ChainSpec(int dim, std::vector<double> norms);

  /// xi_i = m_i for i = 1..levels.
  static ChainSpec canonical(int dim, int levels);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int levels() const { return static_cast<int>(norms_.size()); }
  /// 1-based accessors.
  [[nodiscard]] double norm(int level) const { return norms_.at(level - 1); }
  [[nodiscard]] double height(int level) const { return heights_.at(level - 1); }
  [[nodiscard]] std::span<const double> norms() const { return norms_; }
  [[nodiscard]] std::span<const double> heights() const { return heights_; }

  /// Coordinates of w_level in E^dim.
  [[nodiscard]] std::vector<double> vertex(int level) const;
  /// The first `levels` vertices as a chain of their own.
  [[nodiscard]] ChainSpec prefix(int levels) const;

 private:
  int dim_;
  std::vector<double> norms_;
  std::vector<double> heights_;
};

/// A cone with apex at the cell centre over a (dim-1)-dimensional base.
///  - simplex: base conv{w_1..w_d}, chain with d levels;
///  - wedge:   base = join of conv{w_1..w_{d-3}} with a planar domain placed
///             in the terminal plane through w_{d-2}; chain with d-2 levels.
class WedgeConfig {
 public:
  static WedgeConfig simplex(ChainSpec chain);
  static WedgeConfig wedge(ChainSpec chain, PlanarDomain domain);

  [[nodiscard]] int dim() const { return chain_.dim(); }
  [[nodiscard]] bool is_simplex() const { return !domain_.has_value(); }
  [[nodiscard]] const ChainSpec& chain() const { return chain_; }
  [[nodiscard]] const PlanarDomain& domain() const;

 private:
  WedgeConfig(ChainSpec chain, std::optional<PlanarDomain> domain)
      : chain_(std::move(chain)), domain_(std::move(domain)) {}

  ChainSpec chain_;
  std::optional<PlanarDomain> domain_;
};

/// Triangle over w_{d-2}, w_{d-1}, w_d and the completing sector, joined
/// along the segment w_{d-2} w_d: the planar base of the improved bound.
PlanarDomain wedge_domain(int dim);
PlanarDomain terminal_triangle(int dim);
PlanarDomain terminal_sector(int dim);

/// Terminal triangle of an arbitrary chain with d levels, in the local frame
/// at w_{d-2}: (0,0), (eta_{d-1}, 0), (eta_{d-1}, eta_d).
PlanarDomain terminal_triangle(const ChainSpec& chain);

struct TruncationDisc {};
struct TruncationSquare {};
struct TruncationPolygon {
  std::vector<Point2> vertices;
};
using TruncationShape = std::variant<TruncationDisc, TruncationSquare, TruncationPolygon>;

/// Base of a truncated wedge at terminal distance h: the disc of radius
/// g0(h), optionally cut by the square of half-width g(h) or by an admissible
/// polygon (every vertex outside the open g0-disc, every side at distance
/// >= g(h) from the origin).
PlanarDomain truncation_domain(int dim, double h, const TruncationShape& shape);

WedgeConfig canonical_simplex(int dim);
WedgeConfig canonical_wedge(int dim);
WedgeConfig canonical_sector_wedge(int dim);

/// True iff the ray from the apex through `direction` meets the base.
/// Boundary points count as inside (tolerance kBoundaryTolerance).
bool cone_contains(const WedgeConfig& config, std::span<const double> direction);

/// (dim-1)-volume of the base.
double base_volume(const WedgeConfig& config);

/// Uniform point on the base (a point of E^dim with first coordinate xi_1).
std::vector<double> sample_base(const WedgeConfig& config, RandomStream& stream);

}  // namespace spherebound
