// Deterministic oracle for the same surface-density integral the Monte Carlo
// estimators target.
//
// |y|^{-d} is written as a Gamma-transform integral over u, under which the
// integrand factorises over chain levels. For fixed u the ordered chain
// integral is a nested sequence of indefinite integrals
//   H_k(s) = int_0^s exp(-u eta_k^2 r^2) H_{k+1}(r) dr,
// each carried as a Chebyshev interpolant on [0, 1]; the planar factor of a
// wedge enters through its radial profile. The u-integral is adaptive
// Gauss-Kronrod. The reported error compares node counts N and 2N.
#pragma once

#include "spherebound/density.hpp"
#include "spherebound/geometry.hpp"

namespace spherebound {

inline constexpr int kQuadratureMaxDim = 12;

struct QuadratureOptions {
  int nodes = 48;           // Chebyshev nodes per level (refined to 2 * nodes)
  int radial_nodes = 24;    // Gauss-Legendre nodes per straight side of a planar domain
  double tolerance = 1e-9;  // refinement disagreement that counts as failure
};

/// Throws std::invalid_argument for d > kQuadratureMaxDim and
/// std::runtime_error when the two refinements disagree beyond tolerance.
DensityEstimate quadrature_density(const WedgeConfig& config, const QuadratureOptions& options = {});

}  // namespace spherebound
