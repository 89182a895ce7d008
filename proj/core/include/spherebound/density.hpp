// Surface densities of cones over joins.
//
// With the ball centred at the apex and the base in the hyperplane at
// distance xi_1, the surface density of the unit sphere in the cone is
//   E[ xi_1 * |Y|^{-d} ],   Y uniform on the base.
// Every cone here has xi_1 = 1, so this is also the volume density.
//
// All configurations of one dimension share their chain draws (common random
// numbers), which is what makes sub-1e-4 gaps between them measurable: use
// joint_surface_density and JointEstimate::difference rather than comparing
// independent estimates.
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spherebound/geometry.hpp"
#include "spherebound/planar_domain.hpp"

namespace spherebound {

enum class EstimateMethod { monte_carlo, quadrature, closed_form };
std::string_view to_string(EstimateMethod method);

struct DensityEstimate {
  double value = 0.0;
  double std_error = 0.0;  // one standard error (truncation bound for quadrature)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  EstimateMethod method = EstimateMethod::monte_carlo;
};

/// How the terminal planar factor of a wedge is handled.
///  - conditional: integrated exactly given the chain draw (radial kernel is
///    closed form on arcs, Gauss-Legendre on straight sides);
///  - sampled: a uniform point of the domain per draw.
enum class PlanarMode { conditional, sampled };

struct EstimatorOptions {
  int strata = 16;       // equal-probability slices of the join parameter
  bool antithetic = false;
  PlanarMode planar = PlanarMode::conditional;
  int radial_nodes = 8;  // Gauss-Legendre nodes per straight side (conditional mode)
  unsigned workers = 0;  // 0: hardware concurrency; results do not depend on it
};

/// Means of several targets estimated from the same draws, with their
/// covariance (stratified, so it is the covariance of the estimates).
class JointEstimate {
 public:
  JointEstimate(std::vector<double> means, std::vector<double> covariance, std::uint64_t samples,
                std::uint64_t seed);

  [[nodiscard]] std::size_t size() const { return means_.size(); }
  [[nodiscard]] const std::vector<double>& means() const { return means_; }
  [[nodiscard]] double mean(std::size_t i) const { return means_.at(i); }
  [[nodiscard]] double covariance(std::size_t i, std::size_t j) const;
  [[nodiscard]] std::uint64_t samples() const { return samples_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  [[nodiscard]] DensityEstimate marginal(std::size_t i) const;
  /// sum_i w_i * mean_i with its paired standard error.
  [[nodiscard]] DensityEstimate combination(std::span<const double> weights) const;
  /// mean_i - mean_j with its paired standard error.
  [[nodiscard]] DensityEstimate difference(std::size_t i, std::size_t j) const;

 private:
  std::vector<double> means_;
  std::vector<double> covariance_;  // row-major
  std::uint64_t samples_;
  std::uint64_t seed_;
};

/// All configs must have the same dimension and the same join chain
/// (equal xi_1 and upper heights); only the terminal factor may differ.
JointEstimate joint_surface_density(std::span<const WedgeConfig> configs, std::uint64_t n,
                                    std::uint64_t seed, const EstimatorOptions& options = {});

DensityEstimate surface_density(const WedgeConfig& config, std::uint64_t n, std::uint64_t seed,
                                const EstimatorOptions& options = {});

/// Canonical simplex (d >= 2), sector-only wedge (d >= 4), full wedge (d >= 4).
DensityEstimate sigma(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options = {});
DensityEstimate lambda(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options = {});
DensityEstimate sigma_hat(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options = {});

struct VoronoiBounds {
  double volume_lower = 0.0;   // omega_d / sigma_hat
  double surface_lower = 0.0;  // d * omega_d / sigma_hat
};
VoronoiBounds voronoi_bounds(int d, const DensityEstimate& sigma_hat);

struct BoundSet {
  int d = 0;
  DensityEstimate sigma;
  DensityEstimate sigma_hat;
  DensityEstimate lambda;
  DensityEstimate gap;         // sigma - sigma_hat, paired
  DensityEstimate lambda_gap;  // sigma - lambda, paired
  /// Residual of sigma_hat against the area-weighted mix of sigma and lambda.
  DensityEstimate combination_residual;
  VoronoiBounds voronoi;

  /// sigma_hat below sigma by more than `bands` paired standard errors.
  [[nodiscard]] bool improved(double bands = 3.0) const { return gap.value > bands * gap.std_error; }
};

/// sigma, lambda and sigma_hat of dimension d >= 4 from one joint pass.
BoundSet bound_set(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options = {});

/// Limiting surface density at a point x of the terminal plane of a chain
/// with d-2 levels: the join measure with its planar factor collapsed onto x.
DensityEstimate limiting_surface_density(const ChainSpec& chain, Point2 x, std::uint64_t n,
                                         std::uint64_t seed, const EstimatorOptions& options = {});

/// Limiting densities at several points from the same draws.
JointEstimate limiting_profile(const ChainSpec& chain, std::span<const Point2> points, std::uint64_t n,
                               std::uint64_t seed, const EstimatorOptions& options = {});

/// (1/area) * integral of the limiting density over `domain`, by a polar
/// product rule with the given node counts; Monte Carlo along the chain.
DensityEstimate limiting_density_average(const ChainSpec& chain, const PlanarDomain& domain, int angular,
                                         int radial, std::uint64_t n, std::uint64_t seed,
                                         const EstimatorOptions& options = {});

}  // namespace spherebound
