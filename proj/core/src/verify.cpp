#include "spherebound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "spherebound/density.hpp"
#include "spherebound/formulas.hpp"
#include "spherebound/geometry.hpp"
#include "spherebound/join_sampler.hpp"

namespace spherebound {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
    case CheckStatus::outside_domain: return "expected-outside-domain";
  }
  return "unknown";
}

CheckStatus combine(const std::vector<CheckReport>& reports) {
  bool inconclusive = false;
  for (const CheckReport& r : reports) {
    if (r.status == CheckStatus::fail) return CheckStatus::fail;
    if (r.status == CheckStatus::inconclusive) inconclusive = true;
  }
  return inconclusive ? CheckStatus::inconclusive : CheckStatus::pass;
}

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

CheckReport composite(std::string name, std::vector<CheckReport> parts) {
  CheckReport r;
  r.name = std::move(name);
  r.status = combine(parts);
  int passed = 0;
  for (const auto& p : parts) passed += p.status != CheckStatus::fail && p.status != CheckStatus::inconclusive;
  r.summary = std::to_string(passed) + "/" + std::to_string(parts.size()) + " instances pass";
  r.parts = std::move(parts);
  return r;
}

double rss(double a, double b) { return std::sqrt(a * a + b * b); }

EstimatorOptions options_for(unsigned workers) {
  EstimatorOptions o;
  o.workers = workers;
  return o;
}

// Outcome of a claim `lower <= upper` (strict when `strict`), measured as
// diff = upper - lower with standard error se.
CheckStatus judge(double diff, double se, bool strict) {
  if (diff < -3.0 * se) return CheckStatus::fail;
  if (strict && !(diff > 3.0 * se)) return CheckStatus::inconclusive;
  return CheckStatus::pass;
}

CheckStatus worse(CheckStatus a, CheckStatus b) {
  auto rank = [](CheckStatus s) {
    return s == CheckStatus::fail ? 2 : s == CheckStatus::inconclusive ? 1 : 0;
  };
  return rank(b) > rank(a) ? b : a;
}

}  // namespace

CheckReport check_radius_recursion(int i_max) {
  require(i_max >= 2, "radius-recursion: need i_max >= 2");
  CheckReport r;
  r.name = "radius-recursion";
  double worst = 0.0;
  int worst_i = 1;
  for (int i = 1; i <= i_max; ++i) {
    const double dev = std::abs(face_radius_map(chain_floor(i)) - chain_floor(i + 1));
    if (dev > worst) {
      worst = dev;
      worst_i = i;
    }
  }
  const double fixed = std::abs(face_radius_map(std::sqrt(2.0)) - std::sqrt(2.0));
  r.status = worst < 1e-12 && fixed < 1e-12 ? CheckStatus::pass : CheckStatus::fail;
  r.summary = "max |map(m_i) - m_(i+1)| = " + num(worst) + " over i = 1.." + std::to_string(i_max);
  r.metrics = {{"i_max", i_max}, {"max_deviation", worst}, {"fixed_point_deviation", fixed}};
  r.witness = {{"i", worst_i}};
  return r;
}

CheckReport check_extremal_angle(int d, int grid) {
  require(d >= 4, "extremal-angle: need d >= 4");
  require(grid >= 1000, "extremal-angle: need grid >= 1000");
  CheckReport r;
  r.name = "extremal-angle";
  const Interval range = extremal_x_range(d);

  auto angle_sum = [d](double x) {
    const ExtremalAngles a = extremal_angles(d, x);
    return std::acos(a.cos_rho) + std::acos(a.cos_tau);
  };
  int arg_max = 0;
  double best = -1.0;
  double min_step = std::numeric_limits<double>::infinity();
  double min_step_x = range.lo;
  double prev = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = i == grid - 1 ? range.hi : range.lo + (range.hi - range.lo) * i / (grid - 1);
    const double s = angle_sum(x);
    const double gap = std::numbers::pi - s;
    if (gap > best) {
      best = gap;
      arg_max = i;
    }
    if (i > 0 && s - prev < min_step) {
      min_step = s - prev;
      min_step_x = x;
    }
    prev = s;
  }
  const double cos_at_max = std::cos(best);
  const double cos_star = extremal_cos_phi(d);

  // The quartic governing the sign of the derivative, on its open negativity interval.
  const double a = std::sqrt(2.0 * (d - 4.0) / (d - 1.0));
  const double b = std::sqrt(2.0);
  double f_max = -std::numeric_limits<double>::infinity();
  double f_arg = a;
  constexpr int kQuarticGrid = 10000;
  for (int i = 0; i < kQuarticGrid; ++i) {
    const double x = a + (b - a) * (i + 0.5) / kQuarticGrid;
    const double f = extremal_quartic(d, x);
    if (f > f_max) {
      f_max = f;
      f_arg = x;
    }
  }

  const bool at_left = arg_max == 0;
  const bool cos_ok = std::abs(cos_at_max - cos_star) < 1e-8;
  const bool increasing = min_step > 0.0;
  const bool quartic_negative = f_max < 0.0;
  r.status = at_left && cos_ok && increasing && quartic_negative ? CheckStatus::pass : CheckStatus::fail;
  r.summary = "d=" + std::to_string(d) + ": max of pi-(rho+tau) at x=" +
              num(range.lo + (range.hi - range.lo) * arg_max / (grid - 1)) + ", cos = " + num(cos_at_max) +
              " vs closed form " + num(cos_star);
  r.metrics = {{"d", d},
               {"grid", grid},
               {"cos_at_max", cos_at_max},
               {"cos_phi_star", cos_star},
               {"cos_deviation", std::abs(cos_at_max - cos_star)},
               {"min_increment", min_step},
               {"quartic_max", f_max}};
  r.witness = {{"argmax_index", arg_max}, {"min_increment_x", min_step_x}, {"quartic_argmax_x", f_arg}};
  return r;
}

CheckReport check_five_side_bound(int d, int grid) {
  require(d >= 4, "five-side-bound: need d >= 4");
  require(grid >= 2, "five-side-bound: need grid >= 2");
  CheckReport r;
  r.name = "five-side-bound";
  const double phi_max = std::acos(extremal_cos_phi(d));
  const double quad = five_side_quadratic(d);
  auto phi = [&](int i) { return i == grid - 1 ? phi_max : phi_max * i / (grid - 1); };

  std::vector<double> g(static_cast<std::size_t>(grid) * grid);
  double g_max = -std::numeric_limits<double>::infinity();
  int mi = 0, mj = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double v = five_side_bound(d, phi(i), phi(j)).g;
      g[static_cast<std::size_t>(i) * grid + j] = v;
      if (v > g_max) {
        g_max = v;
        mi = i;
        mj = j;
      }
    }
  }
  // Forward differences along each angle.
  double min_partial = std::numeric_limits<double>::infinity();
  int pi_ = 0, pj = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double v = g[static_cast<std::size_t>(i) * grid + j];
      if (i + 1 < grid) {
        const double di = g[static_cast<std::size_t>(i + 1) * grid + j] - v;
        if (di < min_partial) min_partial = di, pi_ = i, pj = j;
      }
      if (j + 1 < grid) {
        const double dj = g[static_cast<std::size_t>(i) * grid + j + 1] - v;
        if (dj < min_partial) min_partial = dj, pi_ = i, pj = j;
      }
    }
  }

  const bool below_quadratic = g_max <= quad + 1e-9;
  const bool partials_ok = min_partial >= -1e-12;
  const bool threshold_side = d >= 8 ? quad <= 4.0 : quad > 4.0;
  bool bracket_ok = true;
  r.metrics = {{"d", d}, {"grid", grid}, {"grid_max", g_max}, {"quadratic", quad}, {"min_partial_step", min_partial}};
  if (d == 8) {
    const double below = five_side_quadratic(7);
    bracket_ok = below > 4.0;
    r.metrics.emplace_back("quadratic_d_minus_1", below);
  }
  r.witness = {{"argmax_phi_i", phi(mi)}, {"argmax_phi_j", phi(mj)}, {"min_partial_phi_i", phi(pi_)},
               {"min_partial_phi_j", phi(pj)}};

  if (!(below_quadratic && partials_ok && threshold_side && bracket_ok)) {
    r.status = CheckStatus::fail;
  } else {
    r.status = d >= 8 ? CheckStatus::pass : CheckStatus::outside_domain;
  }
  r.summary = "d=" + std::to_string(d) + ": grid max " + num(g_max) + " vs quadratic " + num(quad) +
              (d >= 8 ? " <= 4" : " > 4 (below the d >= 8 range, as expected)");
  return r;
}

CheckReport check_center_distance(int d_max) {
  require(d_max >= 3, "center-distance: need d_max >= 3");
  CheckReport r;
  r.name = "center-distance";
  double worst = -1.0;
  int worst_d = 3;
  bool decreasing = true;
  int bad_d = 0;
  double prev = center_distance_bound(3);
  for (int d = 3; d <= d_max; ++d) {
    const double v = center_distance_bound(d);
    if (v > worst) worst = v, worst_d = d;
    if (d > 3 && !(v < prev)) decreasing = false, bad_d = d;
    prev = v;
  }
  r.status = worst <= 2.0 && decreasing ? CheckStatus::pass : CheckStatus::fail;
  r.summary = "max bound " + num(worst) + " at d=" + std::to_string(worst_d) + " over 3.." + std::to_string(d_max);
  r.metrics = {{"d_max", d_max}, {"max_bound", worst}};
  r.witness = {{"argmax_d", worst_d}, {"first_non_decreasing_d", bad_d}};
  return r;
}

CheckReport check_truncation_ratio(int d, int grid) {
  require(d >= 4, "truncation-ratio: need d >= 4");
  require(grid >= 3, "truncation-ratio: need grid >= 3");
  CheckReport r;
  r.name = "truncation-ratio";
  const TruncationRange range = truncation_range(d);
  auto ratio = [d](double h) {
    const TruncationRadii t = truncation_radii(d, h);
    return t.disc / t.square;
  };
  const double step = (range.boundary - range.lo) / grid;
  double worst = -std::numeric_limits<double>::infinity();
  double worst_h = range.lo;
  for (int i = 1; i + 1 < grid; ++i) {
    const double h = range.lo + i * step;
    const double diff = (ratio(h + step) - ratio(h - step)) / (2.0 * step);
    if (diff > worst) worst = diff, worst_h = h;
  }
  const double left = ratio(range.lo);
  const double expected = std::sqrt(2.0 * d / (d + 1.0));
  r.status = worst < 0.0 && std::abs(left - expected) < 1e-9 ? CheckStatus::pass : CheckStatus::fail;
  r.summary = "d=" + std::to_string(d) + ": largest central difference " + num(worst) + ", left ratio " +
              num(left) + " vs " + num(expected);
  r.metrics = {{"d", d}, {"grid", grid}, {"max_central_difference", worst}, {"left_ratio", left},
               {"expected_left_ratio", expected}};
  r.witness = {{"argmax_h", worst_h}};
  return r;
}

CheckReport check_limiting_monotone(int d, int points, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  require(d >= 4, "limiting-monotone: need d >= 4");
  require(points >= 2, "limiting-monotone: need at least two points");
  CheckReport r;
  r.name = "limiting-monotone";
  const ChainSpec chain = ChainSpec::canonical(d, d - 2);
  const double reach = sector_geometry(d).radius;
  std::vector<Point2> xs;
  for (int i = 0; i < points; ++i) xs.push_back({reach * i / (points - 1), 0.0});
  // Equal-norm control point on a different ray.
  const double c = std::cos(0.7), s = std::sin(0.7);
  xs.push_back({xs[points / 2].x * c, xs[points / 2].x * s});
  const JointEstimate joint = limiting_profile(chain, xs, n, seed, options_for(workers));

  CheckStatus status = CheckStatus::pass;
  double worst_z = std::numeric_limits<double>::infinity();
  int worst_i = 0;
  for (int i = 0; i + 1 < points; ++i) {
    const DensityEstimate diff = joint.difference(i, i + 1);
    status = worse(status, judge(diff.value, diff.std_error, false));
    const double z = diff.std_error > 0 ? diff.value / diff.std_error : diff.value > 0 ? INFINITY : -INFINITY;
    if (z < worst_z) worst_z = z, worst_i = i;
  }
  const DensityEstimate twin = joint.difference(points / 2, points);
  if (std::abs(twin.value) > 3.0 * twin.std_error + 1e-15 * joint.mean(points)) status = CheckStatus::fail;

  r.status = status;
  r.summary = "d=" + std::to_string(d) + ": " + std::to_string(points) +
              " radial points, smallest paired z of consecutive drops " + num(worst_z);
  r.metrics = {{"d", d}, {"samples", static_cast<double>(n)}, {"seed", static_cast<double>(seed)},
               {"first", joint.mean(0)}, {"last", joint.mean(points - 1)}, {"min_paired_z", worst_z},
               {"equal_norm_difference", twin.value}};
  r.witness = {{"weakest_pair_radius", xs[worst_i].x}};
  return r;
}

namespace {

CheckReport truncation_pair(std::string label, const ChainSpec& chain, const PlanarDomain& full,
                            const PlanarDomain& truncated, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  const std::vector<WedgeConfig> configs{WedgeConfig::wedge(chain, full), WedgeConfig::wedge(chain, truncated)};
  const JointEstimate joint = joint_surface_density(configs, n, seed, options_for(workers));
  const DensityEstimate diff = joint.difference(1, 0);
  CheckReport r;
  r.name = std::move(label);
  r.status = judge(diff.value + 1e-15, diff.std_error, false);
  r.summary = "truncated " + num(joint.mean(1)) + " vs full " + num(joint.mean(0)) + " (paired diff " +
              num(diff.value) + " +- " + num(diff.std_error) + ")";
  r.metrics = {{"d", chain.dim()}, {"full", joint.mean(0)}, {"truncated", joint.mean(1)},
               {"difference", diff.value}, {"difference_stderr", diff.std_error},
               {"full_area", full.area()}, {"truncated_area", truncated.area()}};
  return r;
}

std::vector<Point2> square(double half) {
  return {{half, half}, {-half, half}, {-half, -half}, {half, -half}};
}

}  // namespace

CheckReport check_truncation(int d, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  require(d >= 4, "truncation: need d >= 4");
  const ChainSpec chain = ChainSpec::canonical(d, d - 2);
  const double h = chain.norm(d - 2);
  const TruncationRadii radii = truncation_radii(d, h);
  std::vector<CheckReport> parts;

  parts.push_back(truncation_pair("square beyond the disc", chain, PlanarDomain::polygon(square(2.0 * radii.disc)),
                                  truncation_domain(d, h, TruncationPolygon{square(2.0 * radii.disc)}), n, seed,
                                  workers));
  parts.push_back(truncation_pair("square inside the disc", chain, PlanarDomain::polygon(square(0.5 * radii.disc)),
                                  PlanarDomain::disc_cap_polygon(radii.disc, square(0.5 * radii.disc)), n, seed,
                                  workers));

  RandomStream stream(seed, 0xA11CEu, static_cast<std::uint64_t>(d));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::vector<Point2> quad = random_quadrilateral(radii.square, stream);
    try {
      const PlanarDomain truncated = truncation_domain(d, h, TruncationPolygon{quad});
      CheckReport p = truncation_pair("admissible quadrilateral", chain, PlanarDomain::polygon(quad), truncated, n,
                                      seed, workers);
      for (std::size_t i = 0; i < quad.size(); ++i) {
        p.witness.emplace_back("vertex" + std::to_string(i) + "_x", quad[i].x);
        p.witness.emplace_back("vertex" + std::to_string(i) + "_y", quad[i].y);
      }
      parts.push_back(std::move(p));
      break;
    } catch (const std::invalid_argument&) {
    }
  }
  CheckReport r = composite("truncation", std::move(parts));
  r.summary = "d=" + std::to_string(d) + ": " + r.summary;
  return r;
}

std::vector<Point2> random_quadrilateral(double g, RandomStream& stream) {
  double gaps[4];
  double total = 0.0;
  for (double& x : gaps) {
    x = 0.8 + 0.4 * stream.uniform();
    total += x;
  }
  double angle = 2.0 * std::numbers::pi * stream.uniform();
  double normals[4];
  double offsets[4];
  for (int i = 0; i < 4; ++i) {
    normals[i] = angle;
    offsets[i] = g * (1.0 + 0.25 * stream.uniform());
    angle += 2.0 * std::numbers::pi * gaps[i] / total;
  }
  std::vector<Point2> vertices;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    const double a1 = std::cos(normals[i]), b1 = std::sin(normals[i]);
    const double a2 = std::cos(normals[j]), b2 = std::sin(normals[j]);
    const double det = a1 * b2 - a2 * b1;
    vertices.push_back({(offsets[i] * b2 - offsets[j] * b1) / det, (a1 * offsets[j] - a2 * offsets[i]) / det});
  }
  return vertices;
}

namespace {

// Chain floors-to-1.2x below the terminal distance h, strictly increasing.
ChainSpec random_chain(int d, double h, RandomStream& stream) {
  std::vector<double> norms(d - 2);
  norms[d - 3] = h;
  for (int i = d - 3; i >= 1; --i) {
    const double lo = chain_floor(i);
    const double hi = std::min(1.2 * lo, norms[i]);
    norms[i - 1] = lo + (hi - lo) * stream.uniform() * (1.0 - 1e-9);
  }
  return ChainSpec(d, std::move(norms));
}

}  // namespace

CheckReport check_truncated_wedges(int d, int trials, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  require(d >= 4, "truncated-wedge: need d >= 4");
  require(trials >= 1, "truncated-wedge: need at least one trial");
  const EstimatorOptions opts = options_for(workers);
  const DensityEstimate reference = sigma_hat(d, n, seed, opts);
  const TruncationRange range = truncation_range(d);

  std::vector<CheckReport> parts;
  for (int type = 1; type <= 2; ++type) {
    CheckReport part;
    part.name = type == 1 ? "disc and quadrilateral (h below m_(d-1))" : "disc only (h above m_(d-1))";
    if (type == 1 && d < 8) {
      part.status = CheckStatus::outside_domain;
      part.summary = "skipped: the quadrilateral case is claimed for d >= 8 only";
      parts.push_back(std::move(part));
      continue;
    }
    RandomStream stream(seed, 0xC0FFEEu + type, static_cast<std::uint64_t>(d));
    int accepted = 0, skipped = 0;
    double worst_z = -std::numeric_limits<double>::infinity();
    CheckStatus status = CheckStatus::pass;
    while (accepted < trials) {
      if (skipped > 100 * trials) throw std::runtime_error("truncated-wedge: could not generate admissible wedges");
      const double lo = type == 1 ? range.lo : range.boundary;
      const double hi = type == 1 ? range.boundary : range.hi;
      const double h = lo + (hi - lo) * stream.uniform() * (1.0 - 1e-6);
      const ChainSpec chain = random_chain(d, h, stream);
      std::optional<PlanarDomain> domain;
      std::vector<Point2> quad;
      try {
        if (type == 1) {
          quad = random_quadrilateral(truncation_radii(d, h).square, stream);
          domain = truncation_domain(d, h, TruncationPolygon{quad});
        } else {
          domain = truncation_domain(d, h, TruncationDisc{});
        }
      } catch (const std::invalid_argument&) {
        ++skipped;
        continue;
      }
      const std::uint64_t trial_seed = seed + 1000003ull * (accepted + 1) + type;
      const DensityEstimate est = surface_density(WedgeConfig::wedge(chain, *domain), n, trial_seed, opts);
      const double se = rss(est.std_error, reference.std_error);
      const double diff = reference.value - est.value;
      const CheckStatus s = judge(diff, se, false);
      const double z = -diff / se;
      if (z > worst_z || s == CheckStatus::fail) {
        worst_z = std::max(worst_z, z);
        part.witness = {{"h", h}, {"density", est.value}, {"stderr", est.std_error}, {"seed", double(trial_seed)}};
        for (int i = 1; i <= chain.levels(); ++i) part.witness.emplace_back("xi" + std::to_string(i), chain.norm(i));
        for (std::size_t i = 0; i < quad.size(); ++i) {
          part.witness.emplace_back("vertex" + std::to_string(i) + "_x", quad[i].x);
          part.witness.emplace_back("vertex" + std::to_string(i) + "_y", quad[i].y);
        }
      }
      status = worse(status, s);
      ++accepted;
    }
    part.status = status;
    part.summary = std::to_string(accepted) + " wedges, " + std::to_string(skipped) +
                   " inadmissible requests skipped; largest (density - reference)/se = " + num(worst_z);
    part.metrics = {{"trials", accepted}, {"skipped", skipped}, {"max_z", worst_z}};
    parts.push_back(std::move(part));
  }
  CheckReport r = composite("truncated-wedge", std::move(parts));
  r.summary = "d=" + std::to_string(d) + ": " + r.summary + " against sigma_hat = " + num(reference.value) +
              " +- " + num(reference.std_error);
  r.metrics = {{"d", d}, {"sigma_hat", reference.value}, {"sigma_hat_stderr", reference.std_error},
               {"samples", double(n)}, {"seed", double(seed)}};
  return r;
}

CheckReport check_square_truncation(int d, int h_values, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  require(d >= 8, "square-truncation: need d >= 8");
  require(h_values >= 2, "square-truncation: need at least two h values");
  const EstimatorOptions opts = options_for(workers);
  const TruncationRange range = truncation_range(d);
  CheckReport r;
  r.name = "square-truncation";

  std::vector<DensityEstimate> values;
  std::vector<double> hs;
  for (int k = 0; k < h_values; ++k) {
    const double h = range.lo + (range.boundary - range.lo) * k / h_values;
    std::vector<double> norms;
    for (int i = 1; i <= d - 3; ++i) norms.push_back(chain_floor(i));
    norms.push_back(h);
    const ChainSpec chain = k == 0 ? ChainSpec::canonical(d, d - 2) : ChainSpec(d, norms);
    const WedgeConfig config = WedgeConfig::wedge(chain, truncation_domain(d, h, TruncationSquare{}));
    values.push_back(surface_density(config, n, seed, opts));
    hs.push_back(h);
  }

  CheckStatus status = CheckStatus::pass;
  double worst_z = std::numeric_limits<double>::infinity();
  double worst_h = hs[0];
  for (int k = 0; k + 1 < h_values; ++k) {
    const double diff = values[k].value - values[k + 1].value;
    const double se = rss(values[k].std_error, values[k + 1].std_error);
    status = worse(status, judge(diff, se, false));
    if (diff / se < worst_z) worst_z = diff / se, worst_h = hs[k + 1];
  }

  // At h = m_(d-2) the disc-and-square base is eight copies of the wedge base.
  const std::vector<WedgeConfig> anchor{
      canonical_wedge(d), WedgeConfig::wedge(ChainSpec::canonical(d, d - 2),
                                             truncation_domain(d, range.lo, TruncationSquare{}))};
  const JointEstimate joint = joint_surface_density(anchor, n, seed + 1, opts);
  const double anchor_diff = joint.mean(1) - joint.mean(0);
  const double anchor_se = rss(joint.marginal(0).std_error, joint.marginal(1).std_error);
  if (std::abs(anchor_diff) > 3.0 * anchor_se) status = CheckStatus::fail;

  r.status = status;
  r.summary = "d=" + std::to_string(d) + ": " + std::to_string(h_values) +
              " h values, smallest drop z " + num(worst_z) + "; anchor at h = m_(d-2) differs from sigma_hat by " +
              num(anchor_diff) + " (combined se " + num(anchor_se) + ")";
  r.metrics = {{"d", d}, {"samples", double(n)}, {"seed", double(seed)}, {"anchor_difference", anchor_diff},
               {"anchor_combined_stderr", anchor_se}, {"left_half_width", truncation_radii(d, range.lo).square},
               {"min_drop_z", worst_z}};
  for (int k = 0; k < h_values; ++k) {
    r.metrics.emplace_back("h" + std::to_string(k), hs[k]);
    r.metrics.emplace_back("density" + std::to_string(k), values[k].value);
  }
  r.witness = {{"weakest_h", worst_h}};
  return r;
}

namespace {

CheckReport comparison_pair(std::string label, const WedgeConfig& canonical, const WedgeConfig& inflated,
                            double inflation, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  const EstimatorOptions opts = options_for(workers);
  CheckReport r;
  r.name = std::move(label);
  double diff = 0.0, se = 0.0, a = 0.0, b = 0.0;
  const JoinSampler ja(canonical), jb(inflated);
  if (ja.apex_distance() == jb.apex_distance() && ja.heights() == jb.heights()) {
    const std::vector<WedgeConfig> configs{canonical, inflated};
    const JointEstimate joint = joint_surface_density(configs, n, seed, opts);
    const DensityEstimate dd = joint.difference(0, 1);
    a = joint.mean(0), b = joint.mean(1), diff = dd.value, se = dd.std_error;
    r.metrics.emplace_back("paired", 1.0);
  } else {
    const DensityEstimate ea = surface_density(canonical, n, seed, opts);
    const DensityEstimate eb = surface_density(inflated, n, seed + 1, opts);
    a = ea.value, b = eb.value, diff = a - b, se = rss(ea.std_error, eb.std_error);
    r.metrics.emplace_back("paired", 0.0);
  }
  const bool strict = inflation > 0.05;
  r.status = inflation == 0.0 ? (diff == 0.0 ? CheckStatus::pass : CheckStatus::fail) : judge(diff, se, strict);
  r.summary = "canonical " + num(a) + " vs inflated " + num(b) + " (diff " + num(diff) + " +- " + num(se) + ")";
  r.metrics.insert(r.metrics.end(), {{"d", canonical.dim()}, {"canonical", a}, {"inflated", b}, {"difference", diff},
                                     {"difference_stderr", se}, {"max_inflation", inflation}});
  return r;
}

}  // namespace

CheckReport check_comparison(int d, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  require(d >= 2, "comparison: need d >= 2");
  const ChainSpec base = ChainSpec::canonical(d, d);
  const WedgeConfig canonical = WedgeConfig::simplex(base);
  std::vector<CheckReport> parts;

  std::vector<double> all(base.norms().begin(), base.norms().end());
  for (double& x : all) x *= 1.1;
  parts.push_back(comparison_pair("every norm x1.1", canonical, WedgeConfig::simplex(ChainSpec(d, all)), 0.1, n,
                                  seed, workers));

  std::vector<double> last(base.norms().begin(), base.norms().end());
  last.back() *= 1.2;
  parts.push_back(comparison_pair("last norm x1.2", canonical, WedgeConfig::simplex(ChainSpec(d, last)), 0.2, n,
                                  seed, workers));

  parts.push_back(comparison_pair("identity", canonical, canonical, 0.0, n, seed, workers));
  CheckReport r = composite("comparison", std::move(parts));
  r.summary = "d=" + std::to_string(d) + ": " + r.summary;
  return r;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "radius-recursion", "extremal-angle",  "five-side-bound",  "center-distance",   "truncation-ratio",
      "limiting-monotone", "truncation",     "truncated-wedge",  "square-truncation", "comparison"};
  return names;
}

bool is_check_name(std::string_view name) {
  const auto& names = check_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CheckReport run_check(std::string_view name, const CheckParams& p) {
  if (!is_check_name(name)) throw std::invalid_argument("unknown check: " + std::string(name));
  const std::uint64_t seed = p.seed.value_or(kDefaultCheckSeed);
  auto dims = [&](std::vector<int> defaults) { return p.d ? std::vector<int>{*p.d} : defaults; };
  auto over = [&](const std::string& label, const std::vector<int>& ds, auto&& fn) {
    std::vector<CheckReport> parts;
    for (int d : ds) parts.push_back(fn(d));
    if (parts.size() == 1) return parts.front();
    CheckReport r = composite(label, std::move(parts));
    return r;
  };

  if (name == "radius-recursion") return check_radius_recursion(p.grid.value_or(100));
  if (name == "extremal-angle") {
    return over("extremal-angle", dims({4, 8, 12, 42}),
                [&](int d) { return check_extremal_angle(d, p.grid.value_or(100000)); });
  }
  if (name == "five-side-bound") {
    return over("five-side-bound", dims({4, 7, 8, 10, 16, 42}),
                [&](int d) { return check_five_side_bound(d, p.grid.value_or(200)); });
  }
  if (name == "center-distance") return check_center_distance(p.d.value_or(1000));
  if (name == "truncation-ratio") {
    return over("truncation-ratio", dims({8, 12, 42}),
                [&](int d) { return check_truncation_ratio(d, p.grid.value_or(1000)); });
  }
  if (name == "limiting-monotone") {
    return over("limiting-monotone", dims({8}), [&](int d) {
      return check_limiting_monotone(d, p.points.value_or(6), p.samples.value_or(200000), seed, p.workers);
    });
  }
  if (name == "truncation") {
    return over("truncation", dims({8, 10}),
                [&](int d) { return check_truncation(d, p.samples.value_or(200000), seed, p.workers); });
  }
  if (name == "truncated-wedge") {
    return over("truncated-wedge", dims({8}), [&](int d) {
      return check_truncated_wedges(d, p.trials.value_or(50), p.samples.value_or(100000), seed, p.workers);
    });
  }
  if (name == "square-truncation") {
    return over("square-truncation", dims({8}), [&](int d) {
      return check_square_truncation(d, p.points.value_or(5), p.samples.value_or(1000000), seed, p.workers);
    });
  }
  return over("comparison", dims({5, 8}),
              [&](int d) { return check_comparison(d, p.samples.value_or(200000), seed, p.workers); });
}

}  // namespace spherebound
