#include "spherebound/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "spherebound/formulas.hpp"
#include "spherebound/join_sampler.hpp"

namespace spherebound {

ChainSpec::ChainSpec(int dim, std::vector<double> norms) : dim_(dim), norms_(std::move(norms)) {
  if (dim_ < 2) throw std::invalid_argument("ChainSpec: dimension must be >= 2");
  if (norms_.empty() || static_cast<int>(norms_.size()) > dim_) {
    throw std::invalid_argument("ChainSpec: need 1 <= levels <= dim");
  }
  heights_.resize(norms_.size());
  for (std::size_t i = 0; i < norms_.size(); ++i) {
    const int level = static_cast<int>(i) + 1;
    const double xi = norms_[i];
    if (!std::isfinite(xi) || xi < chain_floor(level) - kEndpointTolerance) {
      throw std::invalid_argument("ChainSpec: norm at level " + std::to_string(level) +
                                  " below its floor m_i");
    }
    if (i == 0) {
      heights_[i] = xi;
      continue;
    }
    const double prev = norms_[i - 1];
    if (!(xi > prev)) {
      throw std::invalid_argument("ChainSpec: norms must be strictly increasing");
    }
    heights_[i] = std::sqrt((xi - prev) * (xi + prev));
  }
}

ChainSpec ChainSpec::canonical(int dim, int levels) {
  if (levels < 1 || levels > dim) throw std::invalid_argument("canonical chain: need 1 <= k <= d");
  std::vector<double> norms(levels);
  for (int i = 1; i <= levels; ++i) norms[i - 1] = chain_floor(i);
  ChainSpec chain(dim, std::move(norms));
  // Exact heights rather than differences of rounded norms.
  for (int i = 2; i <= levels; ++i) chain.heights_[i - 1] = chain_height(i);
  return chain;
}

std::vector<double> ChainSpec::vertex(int level) const {
  if (level < 1 || level > levels()) throw std::out_of_range("ChainSpec::vertex: bad level");
  std::vector<double> w(dim_, 0.0);
  for (int j = 0; j < level; ++j) w[j] = heights_[j];
  return w;
}

ChainSpec ChainSpec::prefix(int levels) const {
  if (levels < 1 || levels > this->levels()) throw std::out_of_range("ChainSpec::prefix: bad level");
  ChainSpec out = *this;
  out.norms_.resize(levels);
  out.heights_.resize(levels);
  return out;
}

WedgeConfig WedgeConfig::simplex(ChainSpec chain) {
  if (chain.levels() != chain.dim()) {
    throw std::invalid_argument("WedgeConfig::simplex: chain must have d levels");
  }
  return WedgeConfig(std::move(chain), std::nullopt);
}

WedgeConfig WedgeConfig::wedge(ChainSpec chain, PlanarDomain domain) {
  if (chain.dim() < 4) throw std::invalid_argument("WedgeConfig::wedge: dimension must be >= 4");
  if (chain.levels() != chain.dim() - 2) {
    throw std::invalid_argument("WedgeConfig::wedge: chain must have d-2 levels");
  }
  return WedgeConfig(std::move(chain), std::move(domain));
}

const PlanarDomain& WedgeConfig::domain() const {
  if (!domain_) throw std::logic_error("WedgeConfig::domain: simplex has no planar factor");
  return *domain_;
}

PlanarDomain terminal_triangle(const ChainSpec& chain) {
  const int d = chain.dim();
  if (d < 4 || chain.levels() != d) {
    throw std::invalid_argument("terminal_triangle: need a full chain with d >= 4");
  }
  const double a = chain.height(d - 1);
  const double b = chain.height(d);
  return PlanarDomain::triangle({0.0, 0.0}, {a, 0.0}, {a, b});
}

PlanarDomain terminal_triangle(int dim) { return terminal_triangle(ChainSpec::canonical(dim, dim)); }

PlanarDomain terminal_sector(int dim) {
  const SectorGeometry s = sector_geometry(dim);
  return PlanarDomain::sector(s.radius, s.alpha, std::numbers::pi / 4.0);
}

PlanarDomain wedge_domain(int dim) {
  return PlanarDomain::union_of({terminal_triangle(dim), terminal_sector(dim)});
}

PlanarDomain truncation_domain(int dim, double h, const TruncationShape& shape) {
  const TruncationRadii radii = truncation_radii(dim, h);
  if (std::holds_alternative<TruncationDisc>(shape)) return PlanarDomain::disc(radii.disc);
  if (std::holds_alternative<TruncationSquare>(shape)) {
    return PlanarDomain::disc_cap_square(radii.disc, radii.square);
  }
  const auto& vertices = std::get<TruncationPolygon>(shape).vertices;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = vertices[i];
    const Point2 b = vertices[(i + 1) % n];
    if (std::hypot(a.x, a.y) < radii.disc - kEndpointTolerance) {
      throw std::invalid_argument("truncation_domain: polygon vertex inside the g0 disc");
    }
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double dist = std::abs(a.x * b.y - a.y * b.x) / len;
    if (dist < radii.square - kEndpointTolerance) {
      throw std::invalid_argument("truncation_domain: polygon side closer than g(h)");
    }
  }
  return PlanarDomain::disc_cap_polygon(radii.disc, vertices);
}

WedgeConfig canonical_simplex(int dim) { return WedgeConfig::simplex(ChainSpec::canonical(dim, dim)); }

WedgeConfig canonical_wedge(int dim) {
  return WedgeConfig::wedge(ChainSpec::canonical(dim, dim - 2), wedge_domain(dim));
}

WedgeConfig canonical_sector_wedge(int dim) {
  return WedgeConfig::wedge(ChainSpec::canonical(dim, dim - 2), terminal_sector(dim));
}

bool cone_contains(const WedgeConfig& config, std::span<const double> direction) {
  const int d = config.dim();
  if (static_cast<int>(direction.size()) != d) {
    throw std::invalid_argument("cone_contains: direction has the wrong dimension");
  }
  if (!(direction[0] > 0.0)) return false;
  const ChainSpec& chain = config.chain();
  const double scale = chain.norm(1) / direction[0];
  const double tol = kBoundaryTolerance;
  const int last = chain.levels();

  double prev = 1.0;
  for (int j = 2; j <= last; ++j) {
    const double ratio = scale * direction[j - 1] / chain.height(j);
    if (ratio > prev + tol) return false;
    prev = ratio;
  }
  if (prev < -tol) return false;
  if (config.is_simplex()) return true;

  const double a = prev;
  const double y1 = scale * direction[d - 2];
  const double y2 = scale * direction[d - 1];
  if (a <= tol) return std::abs(y1) <= tol && std::abs(y2) <= tol;
  return config.domain().contains({y1 / a, y2 / a}, tol / a);
}

double base_volume(const WedgeConfig& config) {
  const int d = config.dim();
  const ChainSpec& chain = config.chain();
  double product = 1.0;
  for (int i = 2; i <= chain.levels(); ++i) product *= chain.height(i);
  const double factorial = std::tgamma(static_cast<double>(d));  // (d-1)!
  if (config.is_simplex()) return product / factorial;
  return 2.0 * product * config.domain().area() / factorial;
}

std::vector<double> sample_base(const WedgeConfig& config, RandomStream& stream) {
  const JoinSampler sampler(config);
  std::vector<double> ratios;
  const JoinDraw draw = sampler.draw(stream, 0.0, 1.0, &ratios);
  return sampler.point(draw, ratios);
}

}  // namespace spherebound
