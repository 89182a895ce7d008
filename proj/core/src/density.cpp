#include "spherebound/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>

#include "spherebound/formulas.hpp"
#include "spherebound/join_sampler.hpp"

namespace spherebound {

std::string_view to_string(EstimateMethod method) {
  switch (method) {
    case EstimateMethod::monte_carlo: return "monte_carlo";
    case EstimateMethod::quadrature: return "quadrature";
    case EstimateMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

JointEstimate::JointEstimate(std::vector<double> means, std::vector<double> covariance, std::uint64_t samples,
                             std::uint64_t seed)
    : means_(std::move(means)), covariance_(std::move(covariance)), samples_(samples), seed_(seed) {
  if (covariance_.size() != means_.size() * means_.size()) {
    throw std::invalid_argument("JointEstimate: covariance has the wrong size");
  }
}

double JointEstimate::covariance(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("JointEstimate::covariance");
  return covariance_[i * size() + j];
}

DensityEstimate JointEstimate::combination(std::span<const double> weights) const {
  if (weights.size() != size()) throw std::invalid_argument("JointEstimate::combination: weight count");
  double value = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    value += weights[i] * means_[i];
    for (std::size_t j = 0; j < size(); ++j) var += weights[i] * weights[j] * covariance_[i * size() + j];
  }
  return {value, std::isfinite(var) ? std::sqrt(std::max(var, 0.0)) : std::numeric_limits<double>::infinity(),
          samples_, seed_, EstimateMethod::monte_carlo};
}

DensityEstimate JointEstimate::marginal(std::size_t i) const {
  std::vector<double> w(size(), 0.0);
  w.at(i) = 1.0;
  return combination(w);
}

DensityEstimate JointEstimate::difference(std::size_t i, std::size_t j) const {
  std::vector<double> w(size(), 0.0);
  w.at(i) += 1.0;
  w.at(j) -= 1.0;
  return combination(w);
}

namespace {

// Value of one target for one draw of the shared join.
using Target = std::function<double(const JoinDraw&)>;

// 1 - (1 - (1+z)^{-k}) / (k z): radial kernel of (1 + z r^2/R^2)^{-d/2} over a disc slice.
double one_minus_psi(double k, double z) {
  if (z < 1e-300) return 0.0;
  return 1.0 + std::expm1(-k * std::log1p(z)) / (k * z);
}

Target chain_target(int d, double xi1) {
  const double half_d = 0.5 * d;
  return [=](const JoinDraw& draw) { return xi1 * std::exp(-half_d * std::log(draw.norm2)); };
}

Target conditional_target(int d, double xi1, const PlanarDomain& domain, int nodes) {
  const double half_d = 0.5 * d;
  const double k = half_d - 1.0;
  auto rule = std::make_shared<const RadialRule>(domain, nodes);
  const double inv_area = 1.0 / domain.area();
  return [=](const JoinDraw& draw) {
    const double x = draw.t * draw.t / draw.norm2;
    const double integral = rule->integrate([&](double r2) { return one_minus_psi(k, x * r2); });
    return xi1 * std::exp(-half_d * std::log(draw.norm2)) * integral * inv_area;
  };
}

Target sampled_target(int d, double xi1, const PlanarDomain& domain) {
  const double half_d = 0.5 * d;
  auto dom = std::make_shared<const PlanarDomain>(domain);
  return [=](const JoinDraw& draw) {
    const Point2 q = dom->sample(draw.planar_u[0], draw.planar_u[1], draw.planar_u[2]);
    const double n2 = draw.norm2 + draw.t * draw.t * (q.x * q.x + q.y * q.y);
    return xi1 * std::exp(-half_d * std::log(n2));
  };
}

Target point_target(int d, double xi1, Point2 x) {
  const double half_d = 0.5 * d;
  const double r2 = x.x * x.x + x.y * x.y;
  return [=](const JoinDraw& draw) {
    return xi1 * std::exp(-half_d * std::log(draw.norm2 + draw.t * draw.t * r2));
  };
}

Target target_for(const JoinSampler& sampler, const std::optional<PlanarDomain>& domain,
                  const EstimatorOptions& options) {
  const int d = sampler.dim();
  const double xi1 = sampler.apex_distance();
  if (!sampler.has_planar_factor()) return chain_target(d, xi1);
  if (options.planar == PlanarMode::sampled) return sampled_target(d, xi1, *domain);
  return conditional_target(d, xi1, *domain, options.radial_nodes);
}

// Running mean and co-moment matrix, mergeable in a fixed order.
struct Accumulator {
  explicit Accumulator(std::size_t k) : mean(k, 0.0), comoment(k * k, 0.0) {}

  void add(std::span<const double> x) {
    ++count;
    const std::size_t k = mean.size();
    delta.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      delta[i] = x[i] - mean[i];
      mean[i] += delta[i] / static_cast<double>(count);
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double after = x[i] - mean[i];
      for (std::size_t j = 0; j < k; ++j) comoment[i * k + j] += delta[j] * after;
    }
  }

  void merge(const Accumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const std::size_t k = mean.size();
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = other.mean[i] - mean[i];
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        comoment[i * k + j] += other.comoment[i * k + j] + d[i] * d[j] * na * nb / n;
      }
    }
    for (std::size_t i = 0; i < k; ++i) mean[i] += d[i] * nb / n;
    count += other.count;
  }

  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> comoment;
  std::vector<double> delta;
};

constexpr std::uint64_t kBlock = 4096;

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

JointEstimate run_joint(const JoinSampler& sampler, const std::vector<Target>& targets, std::uint64_t n,
                        std::uint64_t seed, const EstimatorOptions& options) {
  if (n < 1) throw std::invalid_argument("density estimate: need n >= 1");
  if (options.strata < 1) throw std::invalid_argument("density estimate: need at least one stratum");
  const std::size_t k = targets.size();
  const auto strata = static_cast<std::uint32_t>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.strata, n / 2)));

  // Units per stratum; an antithetic unit averages a draw with its mirror.
  std::vector<std::uint64_t> units(strata);
  for (std::uint32_t s = 0; s < strata; ++s) {
    std::uint64_t evals = n / strata + (s < n % strata ? 1 : 0);
    units[s] = options.antithetic ? std::max<std::uint64_t>(1, (evals + 1) / 2) : evals;
  }

  struct Task {
    std::uint32_t stratum;
    std::uint64_t begin;
    std::uint64_t end;
  };
  std::vector<Task> tasks;
  for (std::uint32_t s = 0; s < strata; ++s) {
    for (std::uint64_t b = 0; b < units[s]; b += kBlock) tasks.push_back({s, b, std::min(units[s], b + kBlock)});
  }

  std::vector<Accumulator> results(tasks.size(), Accumulator(k));
  const double width = 1.0 / strata;
  auto run_task = [&](std::size_t index) {
    const Task& task = tasks[index];
    Accumulator& acc = results[index];
    std::vector<double> values(k);
    std::vector<double> mirror(k);
    const double p_lo = task.stratum * width;
    for (std::uint64_t u = task.begin; u < task.end; ++u) {
      RandomStream stream(seed, task.stratum, u);
      const JoinDraw draw = sampler.draw(stream, p_lo, width);
      for (std::size_t i = 0; i < k; ++i) values[i] = targets[i](draw);
      if (options.antithetic) {
        RandomStream anti(seed, task.stratum, u);
        anti.set_antithetic(true);
        const JoinDraw twin = sampler.draw(anti, p_lo, width);
        for (std::size_t i = 0; i < k; ++i) values[i] = 0.5 * (values[i] + targets[i](twin));
      }
      acc.add(values);
    }
  };

  const unsigned workers = std::min<unsigned>(resolve_workers(options.workers),
                                              static_cast<unsigned>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < tasks.size(); i = next++) run_task(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Fixed-order reduction: per stratum, blocks in index order.
  std::vector<double> means(k, 0.0);
  std::vector<double> cov(k * k, 0.0);
  std::size_t cursor = 0;
  for (std::uint32_t s = 0; s < strata; ++s) {
    Accumulator acc(k);
    while (cursor < tasks.size() && tasks[cursor].stratum == s) acc.merge(results[cursor++]);
    const double c = static_cast<double>(acc.count);
    for (std::size_t i = 0; i < k; ++i) means[i] += width * acc.mean[i];
    for (std::size_t e = 0; e < k * k; ++e) {
      cov[e] += acc.count < 2 ? std::numeric_limits<double>::infinity()
                              : width * width * acc.comoment[e] / (c * (c - 1.0));
    }
  }
  return {std::move(means), std::move(cov), n, seed};
}

bool same_join(const JoinSampler& a, const JoinSampler& b) {
  return a.dim() == b.dim() && a.apex_distance() == b.apex_distance() && a.heights() == b.heights() &&
         a.has_planar_factor() == b.has_planar_factor();
}

}  // namespace

JointEstimate joint_surface_density(std::span<const WedgeConfig> configs, std::uint64_t n, std::uint64_t seed,
                                    const EstimatorOptions& options) {
  if (configs.empty()) throw std::invalid_argument("joint_surface_density: no configurations");
  const JoinSampler sampler(configs.front());
  std::vector<Target> targets;
  for (const WedgeConfig& config : configs) {
    const JoinSampler other(config);
    if (!same_join(sampler, other)) {
      throw std::invalid_argument("joint_surface_density: configurations do not share a join chain");
    }
    targets.push_back(target_for(other, other.domain(), options));
  }
  return run_joint(sampler, targets, n, seed, options);
}

DensityEstimate surface_density(const WedgeConfig& config, std::uint64_t n, std::uint64_t seed,
                                const EstimatorOptions& options) {
  return joint_surface_density(std::span(&config, 1), n, seed, options).marginal(0);
}

DensityEstimate sigma(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options) {
  return surface_density(canonical_simplex(d), n, seed, options);
}

DensityEstimate lambda(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options) {
  return surface_density(canonical_sector_wedge(d), n, seed, options);
}

DensityEstimate sigma_hat(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options) {
  return surface_density(canonical_wedge(d), n, seed, options);
}

VoronoiBounds voronoi_bounds(int d, const DensityEstimate& sigma_hat) {
  if (!(sigma_hat.value > 0.0)) throw std::invalid_argument("voronoi_bounds: density must be positive");
  const double omega = unit_ball_volume(d);
  return {omega / sigma_hat.value, d * omega / sigma_hat.value};
}

BoundSet bound_set(int d, std::uint64_t n, std::uint64_t seed, const EstimatorOptions& options) {
  if (d < 4) throw std::invalid_argument("bound_set: wedge quantities need d >= 4");
  const std::vector<WedgeConfig> configs{canonical_simplex(d), canonical_sector_wedge(d), canonical_wedge(d)};
  const JointEstimate joint = joint_surface_density(configs, n, seed, options);

  BoundSet out;
  out.d = d;
  out.sigma = joint.marginal(0);
  out.lambda = joint.marginal(1);
  out.sigma_hat = joint.marginal(2);
  out.gap = joint.difference(0, 2);
  out.lambda_gap = joint.difference(0, 1);
  const double tri = terminal_triangle(d).area();
  const double sec = terminal_sector(d).area();
  const double total = tri + sec;
  const std::vector<double> w{-tri / total, -sec / total, 1.0};
  out.combination_residual = joint.combination(w);
  out.voronoi = voronoi_bounds(d, out.sigma_hat);
  return out;
}

JointEstimate limiting_profile(const ChainSpec& chain, std::span<const Point2> points, std::uint64_t n,
                               std::uint64_t seed, const EstimatorOptions& options) {
  if (points.empty()) throw std::invalid_argument("limiting_profile: no points");
  const JoinSampler sampler = JoinSampler::planar(chain);
  std::vector<Target> targets;
  for (const Point2& x : points) {
    if (!std::isfinite(x.x) || !std::isfinite(x.y)) {
      throw std::invalid_argument("limiting_profile: point is not finite");
    }
    targets.push_back(point_target(chain.dim(), chain.norm(1), x));
  }
  return run_joint(sampler, targets, n, seed, options);
}

DensityEstimate limiting_surface_density(const ChainSpec& chain, Point2 x, std::uint64_t n, std::uint64_t seed,
                                         const EstimatorOptions& options) {
  return limiting_profile(chain, std::span(&x, 1), n, seed, options).marginal(0);
}

DensityEstimate limiting_density_average(const ChainSpec& chain, const PlanarDomain& domain, int angular,
                                         int radial, std::uint64_t n, std::uint64_t seed,
                                         const EstimatorOptions& options) {
  const JoinSampler sampler = JoinSampler::planar(chain);
  const std::vector<WeightedPoint> grid = polar_grid(domain, angular, radial);
  std::vector<double> r2;
  std::vector<double> weight;
  for (const WeightedPoint& p : grid) {
    r2.push_back(p.point.x * p.point.x + p.point.y * p.point.y);
    weight.push_back(p.weight / domain.area());
  }
  const double half_d = 0.5 * chain.dim();
  const double xi1 = chain.norm(1);
  const std::vector<Target> targets{[=](const JoinDraw& draw) {
    const double t2 = draw.t * draw.t;
    double sum = 0.0;
    for (std::size_t i = 0; i < r2.size(); ++i) {
      sum += weight[i] * std::exp(-half_d * std::log(draw.norm2 + t2 * r2[i]));
    }
    return xi1 * sum;
  }};
  return run_joint(sampler, targets, n, seed, options).marginal(0);
}

}  // namespace spherebound
