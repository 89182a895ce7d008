// Brute-force checks of the inequalities and monotonicity claims behind the
// wedge bound. Deterministic checks use grids; statistical ones use fixed
// seeds and 3-standard-error bands.
//
// Status semantics:
//   pass            claim holds on every grid point / within the error band
//   fail            a violation beyond tolerance (witness recorded)
//   inconclusive    a strict inequality could not be resolved at this n
//   outside_domain  the instance lies outside the claim's dimension range and
//                   behaved as expected there (e.g. the five-side quadratic
//                   exceeding 4 below d = 8)
// Preconditions (d too small, bad grid) throw std::invalid_argument.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spherebound/planar_domain.hpp"
#include "spherebound/random.hpp"

namespace spherebound {

enum class CheckStatus { pass, fail, inconclusive, outside_domain };
std::string_view to_string(CheckStatus status);

using NamedValues = std::vector<std::pair<std::string, double>>;

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string summary;
  NamedValues metrics;
  NamedValues witness;  // extremal point or offending configuration
  std::vector<CheckReport> parts;
};

struct CheckParams {
  std::optional<int> d;
  std::optional<int> grid;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> points;
  unsigned workers = 0;
};

inline constexpr std::uint64_t kDefaultCheckSeed = 20240917;

CheckReport check_radius_recursion(int i_max);
CheckReport check_extremal_angle(int d, int grid);
CheckReport check_five_side_bound(int d, int grid);
CheckReport check_center_distance(int d_max);
CheckReport check_truncation_ratio(int d, int grid);
CheckReport check_limiting_monotone(int d, int points, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);
CheckReport check_truncation(int d, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);
CheckReport check_truncated_wedges(int d, int trials, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);
CheckReport check_square_truncation(int d, int h_values, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);
CheckReport check_comparison(int d, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);

/// Registry names, in suite order.
const std::vector<std::string>& check_names();
bool is_check_name(std::string_view name);

/// Runs a registered check with its default parameters, overridden by `params`.
/// Throws std::invalid_argument for unknown names.
CheckReport run_check(std::string_view name, const CheckParams& params = {});

/// Worst status of a set: fail > inconclusive > pass; outside_domain counts as pass.
CheckStatus combine(const std::vector<CheckReport>& reports);

/// Random convex quadrilateral with every side at distance in [g, 1.25 g]
/// from the origin and normals spread around the circle. Not filtered for
/// the vertex condition; truncation_domain decides admissibility.
std::vector<Point2> random_quadrilateral(double g, RandomStream& stream);

}  // namespace spherebound
