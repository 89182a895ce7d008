#include "spherebound/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace spherebound {
namespace {

// Chebyshev-Lobatto machinery on x in [-1, 1], s = (x + 1) / 2.
class Chebyshev {
 public:
  explicit Chebyshev(int points) : n_(points - 1), cos_table_((n_ + 2) * (n_ + 1)) {
    if (points < 4) throw std::invalid_argument("quadrature: need at least 4 nodes");
    for (int k = 0; k <= n_ + 1; ++k) {
      for (int j = 0; j <= n_; ++j) cos_table_[k * (n_ + 1) + j] = std::cos(std::numbers::pi * k * j / n_);
    }
    nodes_.resize(n_ + 1);
    for (int j = 0; j <= n_; ++j) nodes_[j] = 0.5 * (cos_table_[n_ + 1 + j] + 1.0);  // k = 1 row
  }

  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }

  /// Replaces values of f at the nodes by values of int_0^s f at the nodes;
  /// returns the integral over [0, 1].
  double integrate_in_place(std::vector<double>& f) const {
    const int n = n_;
    std::vector<double> c(n + 3, 0.0);
    for (int k = 0; k <= n; ++k) {
      double sum = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        sum += w * f[j] * cos_table_[k * (n + 1) + j];
      }
      c[k] = 2.0 * sum / n;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;

    std::vector<double> a(n + 2, 0.0);
    a[1] = c[0] - 0.5 * c[2];
    for (int k = 2; k <= n + 1; ++k) a[k] = (c[k - 1] - c[k + 1]) / (2.0 * k);
    double at_minus_one = 0.0;
    for (int k = 1; k <= n + 1; ++k) at_minus_one += (k % 2 == 0 ? a[k] : -a[k]);
    a[0] = -at_minus_one;

    for (int j = 0; j <= n; ++j) {
      double sum = 0.0;
      for (int k = 0; k <= n + 1; ++k) sum += a[k] * cos_table_[k * (n + 1) + j];
      f[j] = 0.5 * sum;
    }
    double total = 0.0;
    for (int k = 0; k <= n + 1; ++k) total += a[k];
    return 0.5 * total;
  }

 private:
  int n_;
  std::vector<double> cos_table_;
  std::vector<double> nodes_;
};

// Ordered chain integral for fixed u:
//   int_{1 >= s_2 >= ... >= s_L >= 0} prod_j exp(-u eta_j^2 s_j^2) * T(s_L) ds,
// with T = 1 for simplices and T(t) = t^2 phi(u t^2) for wedges.
class ChainIntegral {
 public:
  ChainIntegral(const WedgeConfig& config, int nodes, int radial_nodes) : cheb_(nodes) {
    const ChainSpec& chain = config.chain();
    for (int j = 2; j <= chain.levels(); ++j) eta2_.push_back(chain.height(j) * chain.height(j));
    if (!config.is_simplex()) rule_.emplace(config.domain(), radial_nodes);
  }

  double operator()(double u) const {
    const auto& s = cheb_.nodes();
    std::vector<double> h(s.size(), 1.0);
    if (rule_) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = u * s[i] * s[i];
        const double phi = rule_->integrate([v](double r2) {
          const double z = v * r2;
          return z < 1e-300 ? 0.0 : 1.0 + std::expm1(-z) / z;
        });
        h[i] = s[i] * s[i] * phi;
      }
    }
    double total = 0.0;
    for (std::size_t level = eta2_.size(); level-- > 0;) {
      for (std::size_t i = 0; i < s.size(); ++i) h[i] *= std::exp(-u * eta2_[level] * s[i] * s[i]);
      total = cheb_.integrate_in_place(h);
    }
    return total;
  }

 private:
  Chebyshev cheb_;
  std::vector<double> eta2_;
  std::optional<RadialRule> rule_;
};

struct Evaluation {
  double value;
  double error;
};

Evaluation evaluate(const WedgeConfig& config, int nodes, int radial_nodes) {
  const int d = config.dim();
  const double xi1 = config.chain().norm(1);
  const ChainIntegral chain(config, nodes, radial_nodes);
  // u = v^2 keeps the integrand smooth at the origin for odd d.
  auto integrand = [&](double v) {
    if (v == 0.0) return 0.0;
    const double u = v * v;
    return 2.0 * std::pow(v, d - 1) * std::exp(-u * xi1 * xi1) * chain(u);
  };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 10, 1e-11, &error);

  // Omega / volume; the chain heights cancel.
  double scale = xi1 * std::tgamma(static_cast<double>(d)) / std::tgamma(0.5 * d);
  if (!config.is_simplex()) scale /= 2.0 * config.domain().area();
  return {scale * integral, scale * error};
}

}  // namespace

DensityEstimate quadrature_density(const WedgeConfig& config, const QuadratureOptions& options) {
  if (config.dim() > kQuadratureMaxDim) {
    throw std::invalid_argument("quadrature_density: dimension " + std::to_string(config.dim()) +
                                " exceeds the cost guard of " + std::to_string(kQuadratureMaxDim));
  }
  const Evaluation coarse = evaluate(config, options.nodes, options.radial_nodes);
  const Evaluation fine = evaluate(config, 2 * options.nodes, 2 * options.radial_nodes);
  const double disagreement = std::abs(fine.value - coarse.value);
  if (!(disagreement <= options.tolerance)) {
    throw std::runtime_error("quadrature_density: refinements disagree by " + std::to_string(disagreement));
  }
  DensityEstimate out;
  out.value = fine.value;
  out.std_error = disagreement + fine.error;
  out.samples = static_cast<std::uint64_t>(2 * options.nodes);
  out.method = EstimateMethod::quadrature;
  return out;
}

}  // namespace spherebound
