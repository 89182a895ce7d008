// Uniform sampling on cone bases written as joins.
//
// A base point is parametrised by chain ratios 1 = s_1 >= s_2 >= ... >= s_L = t >= 0
// (coordinate j is eta_j * s_j) followed, for wedges, by t * q with q in the
// planar domain. Uniform measure on the base then factors as
//   t ~ Beta(c, d - c)   with c = 1 + dim(terminal factor),
//   s_2..s_{L-1} | t     sorted uniforms on [t, 1],
//   q                    uniform on the planar domain,
// which is what JoinSampler draws. Full simplices with d >= 4 are drawn as
// the join of conv{w_1..w_{d-3}} with the triangle w_{d-2} w_{d-1} w_d, so
// they share their chain draws with every wedge of the same dimension.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "spherebound/geometry.hpp"
#include "spherebound/planar_domain.hpp"
#include "spherebound/random.hpp"

namespace spherebound {

/// Law of the rank-th smallest of `count` independent uniforms, i.e.
/// Beta(rank, count + 1 - rank) with integer shapes.
class OrderStatisticLaw {
 public:
  OrderStatisticLaw(int rank, int count);

  [[nodiscard]] double cdf(double t) const;
  [[nodiscard]] double pdf(double t) const;
  [[nodiscard]] double quantile(double p) const;
  [[nodiscard]] double mean() const { return static_cast<double>(rank_) / (count_ + 1); }
  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] int count() const { return count_; }

 private:
  int rank_;
  int count_;
  double log_pdf_scale_;
  double log_choose_;          // log C(count, rank)
  // Quantiles at i / (table size - 1), Newton starting points; shared by all
  // laws of the same shape.
  std::shared_ptr<const std::vector<double>> table_;
};

struct JoinDraw {
  double t = 0.0;
  double norm2 = 0.0;  // |y|^2 of the chain part, including the terminal level s_L = t
  double planar_u[3] = {0.0, 0.0, 0.0};
};

class JoinSampler {
 public:
  /// Join form of a cone base; full simplices with d >= 4 use the terminal triangle.
  explicit JoinSampler(const WedgeConfig& config);
  /// Chain with d-2 levels joined with an (as yet unspecified) planar factor.
  static JoinSampler planar(const ChainSpec& chain);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int terminal_level() const { return terminal_level_; }
  [[nodiscard]] bool has_planar_factor() const { return planar_; }
  [[nodiscard]] double apex_distance() const { return xi1_; }
  /// eta_2..eta_L of the explicitly drawn chain levels.
  [[nodiscard]] const std::vector<double>& heights() const { return heights_; }
  [[nodiscard]] const OrderStatisticLaw& law() const { return law_; }
  /// The planar factor, when the sampler was built from a config.
  [[nodiscard]] const std::optional<PlanarDomain>& domain() const { return domain_; }

  /// Draws with the join parameter restricted to the probability slice
  /// [p_lo, p_lo + p_width]. Consumes 1 + (L - 2) (+ 3 if planar) uniforms.
  JoinDraw draw(RandomStream& stream, double p_lo, double p_width,
                std::vector<double>* ratios = nullptr) const;

  /// Point of E^dim for a draw whose chain ratios were captured.
  [[nodiscard]] std::vector<double> point(const JoinDraw& draw, const std::vector<double>& ratios) const;

 private:
  JoinSampler(int dim, double xi1, std::vector<double> heights, bool planar,
              std::optional<PlanarDomain> domain);

  int dim_;
  int terminal_level_;
  double xi1_;
  std::vector<double> heights_;  // eta_2..eta_L
  bool planar_;
  std::optional<PlanarDomain> domain_;
  OrderStatisticLaw law_;
};

}  // namespace spherebound
