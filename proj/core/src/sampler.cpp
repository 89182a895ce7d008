#include "spherebound/join_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <stdexcept>

namespace spherebound {

namespace {

constexpr int kQuantileTable = 1024;

// Safeguarded Newton for cdf(t) = p on a bracket [lo, hi] containing the root.
double solve_quantile(const OrderStatisticLaw& law, double p, double lo, double hi, double t) {
  for (int iter = 0; iter < 100; ++iter) {
    const double f = law.cdf(t) - p;
    if (f > 0.0) hi = t; else lo = t;
    const double density = law.pdf(t);
    double next = density > 0.0 ? t - f / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 4e-16 * t) return next;
    t = next;
  }
  return t;
}

}  // namespace

OrderStatisticLaw::OrderStatisticLaw(int rank, int count) : rank_(rank), count_(count) {
  if (count < 1 || rank < 1 || rank > count) {
    throw std::invalid_argument("OrderStatisticLaw: need 1 <= rank <= count");
  }
  log_pdf_scale_ = std::log(static_cast<double>(count)) + std::lgamma(count) - std::lgamma(rank) -
                   std::lgamma(count - rank + 1);
  log_choose_ = std::lgamma(count + 1) - std::lgamma(rank + 1) - std::lgamma(count - rank + 1);
  if (rank_ == 1) return;  // closed-form quantile

  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<double>>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{rank, count}];
  if (!slot) {
    // Each entry starts from its predecessor, so the table costs a few cdf
    // evaluations per cell.
    auto table = std::make_shared<std::vector<double>>(kQuantileTable + 1, 0.0);
    table->back() = 1.0;
    for (int i = 1; i < kQuantileTable; ++i) {
      const double p = static_cast<double>(i) / kQuantileTable;
      const double prev = (*table)[i - 1];
      const double start = i == 1 ? std::min(std::exp((std::log(p) - log_choose_) / rank_), 0.5) : prev;
      (*table)[i] = solve_quantile(*this, p, prev, 1.0, start);
    }
    slot = std::move(table);
  }
  table_ = slot;
}

double OrderStatisticLaw::cdf(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // P(Binomial(count, t) >= rank); sum whichever tail is the small one, with
  // consecutive binomial terms related by the ratio (n - k) / (k + 1) * t / (1 - t).
  const double odds = t / (1.0 - t);
  const double log_1mt = std::log1p(-t);
  if (t * (count_ + 1) < rank_) {
    double x = std::exp(log_choose_ + rank_ * std::log(t) + (count_ - rank_) * log_1mt);
    double sum = x;
    for (int k = rank_; k < count_ && x > 1e-17 * sum; ++k) {
      x *= odds * (count_ - k) / (k + 1);
      sum += x;
    }
    return sum;
  }
  double x = std::exp(count_ * log_1mt);
  double lower = x;
  for (int k = 0; k + 1 < rank_; ++k) {
    x *= odds * (count_ - k) / (k + 1);
    lower += x;
  }
  return 1.0 - lower;
}

double OrderStatisticLaw::pdf(double t) const {
  if (t < 0.0 || t > 1.0) return 0.0;
  const double a = rank_ - 1;
  const double b = count_ - rank_;
  if ((t == 0.0 && a > 0) || (t == 1.0 && b > 0)) return 0.0;
  const double log_t = a > 0 ? a * std::log(t) : 0.0;
  const double log_1mt = b > 0 ? b * std::log1p(-t) : 0.0;
  return std::exp(log_pdf_scale_ + log_t + log_1mt);
}

double OrderStatisticLaw::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("OrderStatisticLaw::quantile: p outside [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  if (rank_ == 1) return -std::expm1(std::log1p(-p) / count_);

  const double x = p * kQuantileTable;
  const int cell = std::min(static_cast<int>(x), kQuantileTable - 1);
  const std::vector<double>& table = *table_;
  double lo = table[cell];
  double hi = table[cell + 1];
  double t;
  if (cell == 0) {
    t = std::min(std::exp((std::log(p) - log_choose_) / rank_), hi);  // cdf ~ C(n, r) t^r near 0
  } else {
    t = lo + (x - cell) * (hi - lo);
  }
  return solve_quantile(*this, p, lo, hi, t);
}

namespace {

int rank_for(bool planar) { return planar ? 3 : 1; }

// Chain levels drawn explicitly: all of them for low-dimensional simplices,
// otherwise everything up to the terminal plane.
int join_levels(const WedgeConfig& config) {
  return config.is_simplex() && config.dim() < 4 ? config.dim() : config.dim() - 2;
}

std::vector<double> upper_heights(const ChainSpec& chain, int levels) {
  return {chain.heights().begin() + 1, chain.heights().begin() + levels};
}

std::optional<PlanarDomain> join_domain(const WedgeConfig& config) {
  if (!config.is_simplex()) return config.domain();
  if (config.dim() < 4) return std::nullopt;
  return terminal_triangle(config.chain());
}

thread_local std::vector<double> t_scratch;

}  // namespace

JoinSampler::JoinSampler(int dim, double xi1, std::vector<double> heights, bool planar,
                         std::optional<PlanarDomain> domain)
    : dim_(dim),
      terminal_level_(static_cast<int>(heights.size()) + 1),
      xi1_(xi1),
      heights_(std::move(heights)),
      planar_(planar),
      domain_(std::move(domain)),
      law_(rank_for(planar), dim - 1) {}

JoinSampler::JoinSampler(const WedgeConfig& config)
    : JoinSampler(config.dim(), config.chain().norm(1), upper_heights(config.chain(), join_levels(config)),
                  !(config.is_simplex() && config.dim() < 4), join_domain(config)) {}

JoinSampler JoinSampler::planar(const ChainSpec& chain) {
  if (chain.dim() < 4 || chain.levels() != chain.dim() - 2) {
    throw std::invalid_argument("JoinSampler::planar: need a chain with d-2 levels, d >= 4");
  }
  return JoinSampler(chain.dim(), chain.norm(1), upper_heights(chain, chain.levels()), true, std::nullopt);
}

JoinDraw JoinSampler::draw(RandomStream& stream, double p_lo, double p_width,
                           std::vector<double>* ratios) const {
  JoinDraw out;
  const double p = std::clamp(p_lo + stream.uniform() * p_width, 0.0, 1.0);
  const double t = law_.quantile(p);
  out.t = t;

  // s_2..s_{L-1}: sorted uniforms on [t, 1], largest first.
  const std::size_t inner = heights_.empty() ? 0 : heights_.size() - 1;
  std::vector<double>& s = ratios != nullptr ? *ratios : t_scratch;
  s.resize(inner);
  for (auto& v : s) v = stream.uniform();
  std::sort(s.begin(), s.end(), std::greater<>());
  double norm2 = xi1_ * xi1_;
  for (std::size_t j = 0; j < inner; ++j) {
    s[j] = t + (1.0 - t) * s[j];
    const double y = heights_[j] * s[j];
    norm2 += y * y;
  }
  if (!heights_.empty()) {
    const double y = heights_.back() * t;
    norm2 += y * y;
  }
  out.norm2 = norm2;
  if (ratios != nullptr && !heights_.empty()) ratios->push_back(t);

  if (planar_) {
    for (double& u : out.planar_u) u = stream.uniform();
  }
  return out;
}

std::vector<double> JoinSampler::point(const JoinDraw& draw, const std::vector<double>& ratios) const {
  if (ratios.size() != heights_.size()) throw std::invalid_argument("JoinSampler::point: ratio count mismatch");
  std::vector<double> y(dim_, 0.0);
  y[0] = xi1_;
  for (std::size_t j = 0; j < heights_.size(); ++j) y[j + 1] = heights_[j] * ratios[j];
  if (planar_) {
    if (!domain_) throw std::logic_error("JoinSampler::point: no planar domain attached");
    const Point2 q = domain_->sample(draw.planar_u[0], draw.planar_u[1], draw.planar_u[2]);
    y[dim_ - 2] = draw.t * q.x;
    y[dim_ - 1] = draw.t * q.y;
  }
  return y;
}

}  // namespace spherebound
