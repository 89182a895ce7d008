#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "spherebound/density.hpp"
#include "spherebound/formulas.hpp"
#include "spherebound/verify.hpp"

#ifndef SPHEREBOUND_VERSION
#define SPHEREBOUND_VERSION "0.0.0"
#endif

namespace spherebound::cli {

using nlohmann::ordered_json;

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::strtod(fmt::format("{:.{}g}", x, digits).c_str(), nullptr);
}

namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;
constexpr std::uint64_t kDefaultSamples = 1'000'000;
constexpr std::uint64_t kPrecisionSamples = 100'000'000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quotes a CSV field when it contains a comma or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string g9(double x) { return std::isfinite(x) ? fmt::format("{:.9g}", x) : (x > 0 ? "inf" : "nan"); }

ordered_json jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_significant(x);
}

ordered_json jest(const DensityEstimate& e) { return {{"value", jnum(e.value)}, {"stderr", jnum(e.std_error)}}; }

// Writes to --out when given, otherwise to `out`. Content is assembled first
// so that failures never leave partial output behind.
int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << path << " for writing\n";
    return kUsage;
  }
  file << text;
  return kOk;
}

// ---------------------------------------------------------------- bounds

struct BoundsOptions {
  int dmin = 8;
  int dmax = 8;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  bool precision = false;
  std::string out;
  unsigned workers = 0;
};

struct BoundsRow {
  BoundSet set;
  ReferenceBounds ref;
};

std::string bounds_csv(const std::vector<BoundsRow>& rows, const BoundsOptions& o) {
  std::string s = fmt::format("# seed={} n={} version={} reference curves: {}\n", o.seed, o.samples,
                              SPHEREBOUND_VERSION, kAsymptoticLabel);
  s += "d,sigma,sigma_stderr,sigma_hat,sigma_hat_stderr,lambda,lambda_stderr,gap,gap_stderr,improved,"
       "volume_lower,surface_lower,daniels,kl,ball_lower\n";
  for (const auto& r : rows) {
    const BoundSet& b = r.set;
    s += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", b.d, g9(b.sigma.value), g9(b.sigma.std_error),
                     g9(b.sigma_hat.value), g9(b.sigma_hat.std_error), g9(b.lambda.value),
                     g9(b.lambda.std_error), g9(b.gap.value), g9(b.gap.std_error), b.improved() ? "yes" : "no",
                     g9(b.voronoi.volume_lower), g9(b.voronoi.surface_lower), g9(r.ref.daniels), g9(r.ref.kl),
                     g9(r.ref.ball_lower));
  }
  return s;
}

std::string bounds_md(const std::vector<BoundsRow>& rows, const BoundsOptions& o) {
  std::string s = fmt::format("Seed {}, n = {}, version {}.\n\n", o.seed, o.samples, SPHEREBOUND_VERSION);
  s += "| d | sigma | sigma_hat | lambda | gap | improved | volume lower | surface lower | Daniels* | KL* | Ball* |\n";
  s += "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    const BoundSet& b = r.set;
    s += fmt::format("| {} | {} ± {} | {} ± {} | {} ± {} | {} ± {} | {} | {} | {} | {} | {} | {} |\n", b.d,
                     g9(b.sigma.value), g9(b.sigma.std_error), g9(b.sigma_hat.value), g9(b.sigma_hat.std_error),
                     g9(b.lambda.value), g9(b.lambda.std_error), g9(b.gap.value), g9(b.gap.std_error),
                     b.improved() ? "yes" : "no", g9(b.voronoi.volume_lower), g9(b.voronoi.surface_lower),
                     g9(r.ref.daniels), g9(r.ref.kl), g9(r.ref.ball_lower));
  }
  s += fmt::format("\n\\* {}.\n", kAsymptoticLabel);
  return s;
}

std::string bounds_json(const std::vector<BoundsRow>& rows, const BoundsOptions& o) {
  ordered_json doc;
  doc["meta"] = {{"seed", o.seed}, {"n", o.samples}, {"version", SPHEREBOUND_VERSION},
                 {"reference_curves", kAsymptoticLabel}};
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    const BoundSet& b = r.set;
    doc["rows"].push_back({{"d", b.d},
                           {"sigma", jest(b.sigma)},
                           {"sigma_hat", jest(b.sigma_hat)},
                           {"lambda", jest(b.lambda)},
                           {"gap", jest(b.gap)},
                           {"improved", b.improved()},
                           {"volume_lower", jnum(b.voronoi.volume_lower)},
                           {"surface_lower", jnum(b.voronoi.surface_lower)},
                           {"daniels", jnum(r.ref.daniels)},
                           {"kl", jnum(r.ref.kl)},
                           {"ball_lower", jnum(r.ref.ball_lower)}});
  }
  return doc.dump(2) + "\n";
}

int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err) {
  BoundsOptions o = opt;
  if (o.precision) o.samples = kPrecisionSamples;
  if (!(4 <= o.dmin && o.dmin <= o.dmax && o.dmax <= 64)) {
    throw UsageError("need 4 <= dmin <= dmax <= 64 (wedge quantities are undefined below d = 4)");
  }
  if (o.samples < 10'000) throw UsageError("need --samples >= 10000");

  const auto start = std::chrono::steady_clock::now();
  EstimatorOptions eo;
  eo.workers = o.workers;
  std::vector<BoundsRow> rows;
  for (int d = o.dmin; d <= o.dmax; ++d) rows.push_back({bound_set(d, o.samples, o.seed, eo), reference_bounds(d)});
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << fmt::format("bounds: {} rows in {:.1f} s\n", rows.size(), wall);

  std::string text;
  if (o.format == "csv") text = bounds_csv(rows, o);
  else if (o.format == "md") text = bounds_md(rows, o);
  else text = bounds_json(rows, o);
  return emit(text, o.out, out, err);
}

// ---------------------------------------------------------------- verify

ordered_json named_values(const NamedValues& values) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : values) j[k] = jnum(v);
  return j;
}

ordered_json report_json(const CheckReport& r) {
  ordered_json j{{"name", r.name},
                 {"status", std::string(to_string(r.status))},
                 {"summary", r.summary},
                 {"metrics", named_values(r.metrics)},
                 {"witness", named_values(r.witness)}};
  if (!r.parts.empty()) {
    j["parts"] = ordered_json::array();
    for (const auto& p : r.parts) j["parts"].push_back(report_json(p));
  }
  return j;
}

void report_text(const CheckReport& r, int depth, std::string& s) {
  s += fmt::format("{:{}}[{}] {}: {}\n", "", 2 * depth, to_string(r.status), r.name, r.summary);
  for (const auto& p : r.parts) report_text(p, depth + 1, s);
}

struct VerifyOptions {
  std::vector<std::string> names;
  CheckParams params;
  std::optional<int> d, grid, trials, points;
  std::optional<std::uint64_t> samples, seed;
  std::string format = "json";
  std::string out;
};

int cmd_verify(VerifyOptions o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (o.names.empty() || (o.names.size() == 1 && o.names[0] == "all")) {
    names = check_names();
  } else {
    for (const auto& n : o.names) {
      if (!is_check_name(n)) {
        std::string known;
        for (const auto& k : check_names()) known += " " + k;
        throw UsageError("unknown check '" + n + "'; known checks: all" + known);
      }
      names.push_back(n);
    }
  }
  o.params.d = o.d;
  o.params.grid = o.grid;
  o.params.trials = o.trials;
  o.params.points = o.points;
  o.params.samples = o.samples;
  o.params.seed = o.seed;

  std::vector<CheckReport> reports;
  for (const auto& n : names) {
    try {
      reports.push_back(run_check(n, o.params));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const CheckStatus overall = combine(reports);

  std::string text;
  if (o.format == "json") {
    ordered_json doc{{"meta", {{"seed", o.params.seed.value_or(kDefaultCheckSeed)}, {"version", SPHEREBOUND_VERSION}}},
                     {"status", std::string(to_string(overall))},
                     {"checks", ordered_json::array()}};
    for (const auto& r : reports) doc["checks"].push_back(report_json(r));
    text = doc.dump(2) + "\n";
  } else {
    for (const auto& r : reports) report_text(r, 0, text);
    text += fmt::format("overall: {}\n", to_string(overall));
  }
  const int written = emit(text, o.out, out, err);
  if (written != kOk) return written;
  switch (overall) {
    case CheckStatus::fail: return kCheckFailed;
    case CheckStatus::inconclusive:
      err << "verify: some strict inequalities were not resolved; rerun with a larger --samples\n";
      return kInconclusive;
    default: return kOk;
  }
}

// ---------------------------------------------------------------- records

struct RecordsOptions {
  std::string file;
  int dmin = 2;
  int dmax = 64;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  unsigned workers = 0;
};

int cmd_records(const RecordsOptions& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.file);
  if (!in) throw UsageError("cannot open records file " + o.file);
  std::vector<RecordRow> rows;
  try {
    rows = parse_records(in);
  } catch (const RecordsError& e) {
    throw UsageError(fmt::format("{}:{}: {}", o.file, e.line(), e.what()));
  }
  if (o.dmin < 2 || o.dmin > o.dmax || o.dmax > 64) throw UsageError("need 2 <= dmin <= dmax <= 64");

  EstimatorOptions eo;
  eo.workers = o.workers;
  std::map<int, DensityEstimate> bounds;
  std::string text = "d,density,name,source,bound,bound_stderr,bound_kind,status\n";
  bool inconsistent = false;
  for (const auto& row : rows) {
    const bool in_range = row.d >= o.dmin && row.d <= o.dmax;
    std::string bound = "", se = "", kind = "", status = "no bound computed";
    if (in_range) {
      auto it = bounds.find(row.d);
      if (it == bounds.end()) {
        it = bounds.emplace(row.d, row.d < 4 ? sigma(row.d, o.samples, o.seed, eo)
                                             : sigma_hat(row.d, o.samples, o.seed, eo)).first;
      }
      const DensityEstimate& b = it->second;
      bound = g9(b.value);
      se = g9(b.std_error);
      kind = row.d < 4 ? "sigma" : "sigma_hat";
      if (row.context_only()) {
        status = "context";
      } else if (row.density <= b.value + 3.0 * b.std_error) {
        status = "consistent";
      } else {
        status = "inconsistent";
        inconsistent = true;
      }
    } else if (row.context_only()) {
      status = "context";
    }
    text += fmt::format("{},{},{},{},{},{},{},{}\n", row.d, g9(row.density), csv_field(row.name), csv_field(row.source), bound, se, kind,
                        status);
  }
  const int written = emit(text, o.out, out, err);
  if (written != kOk) return written;
  if (inconsistent) {
    err << "records: a record exceeds its upper bound beyond 3 standard errors\n";
    return kCheckFailed;
  }
  return kOk;
}

// ---------------------------------------------------------------- plot-data

struct PlotOptions {
  std::string kind;
  int dmin = 8;
  int dmax = 16;
  int d = 8;
  int points = 0;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  unsigned workers = 0;
};

int cmd_plot(const PlotOptions& o, std::ostream& out, std::ostream& err) {
  EstimatorOptions eo;
  eo.workers = o.workers;
  std::string s;
  auto check_range = [&] {
    if (!(4 <= o.dmin && o.dmin <= o.dmax && o.dmax <= 64)) throw UsageError("need 4 <= dmin <= dmax <= 64");
  };
  if (o.kind == "sigma_vs_d" || o.kind == "gap_vs_d") {
    check_range();
    const bool gap = o.kind == "gap_vs_d";
    s = gap ? "# d\tsigma\tsigma_hat\tgap\tgap_stderr\n"
            : "# d\tsigma\tsigma_stderr\tsigma_hat\tsigma_hat_stderr\tlambda\tlambda_stderr\tdaniels\n";
    for (int d = o.dmin; d <= o.dmax; ++d) {
      const BoundSet b = bound_set(d, o.samples, o.seed, eo);
      if (gap) {
        s += fmt::format("{}\t{}\t{}\t{}\t{}\n", d, g9(b.sigma.value), g9(b.sigma_hat.value), g9(b.gap.value),
                         g9(b.gap.std_error));
      } else {
        s += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", d, g9(b.sigma.value), g9(b.sigma.std_error),
                         g9(b.sigma_hat.value), g9(b.sigma_hat.std_error), g9(b.lambda.value),
                         g9(b.lambda.std_error), g9(reference_bounds(d).daniels));
      }
    }
  } else if (o.kind == "dlim_profile") {
    if (o.d < 4 || o.d > 64) throw UsageError("need 4 <= d <= 64");
    const int n = o.points > 1 ? o.points : 20;
    const double reach = sector_geometry(o.d).radius;
    std::vector<Point2> xs;
    for (int i = 0; i < n; ++i) xs.push_back({reach * i / (n - 1), 0.0});
    const JointEstimate joint = limiting_profile(ChainSpec::canonical(o.d, o.d - 2), xs, o.samples, o.seed, eo);
    s = "# norm\testimate\tstderr\tnonincreasing\n";
    for (int i = 0; i < n; ++i) {
      const DensityEstimate e = joint.marginal(i);
      const bool ok = i == 0 || joint.difference(i - 1, i).value >= -3.0 * joint.difference(i - 1, i).std_error;
      s += fmt::format("{}\t{}\t{}\t{}\n", g9(xs[i].x), g9(e.value), g9(e.std_error), ok ? 1 : 0);
    }
  } else if (o.kind == "g_ratio") {
    if (o.d < 4 || o.d > 1000) throw UsageError("need 4 <= d <= 1000");
    const int n = o.points > 1 ? o.points : 200;
    const TruncationRange range = truncation_range(o.d);
    s = "# h\tg0\tg\tratio\n";
    for (int i = 0; i < n; ++i) {
      const double h = range.lo + (range.boundary - range.lo) * i / n;
      const TruncationRadii t = truncation_radii(o.d, h);
      s += fmt::format("{}\t{}\t{}\t{}\n", g9(h), g9(t.disc), g9(t.square), g9(t.disc / t.square));
    }
  } else {
    throw UsageError("unknown plot kind '" + o.kind + "'; expected sigma_vs_d, gap_vs_d, dlim_profile or g_ratio");
  }
  return emit(s, o.out, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sphere-packing density bounds: the orthoscheme simplex bound, the wedge bound and their checks",
               "spherebound"};
  app.set_version_flag("--version", std::string(SPHEREBOUND_VERSION));
  app.require_subcommand(1);

  const std::vector<std::string> formats{"csv", "json", "md"};

  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "Table of sigma, sigma_hat, lambda and Voronoi-cell bounds per d");
  bounds->add_option("--dmin", bo.dmin, "Smallest dimension (>= 4)");
  bounds->add_option("--dmax", bo.dmax, "Largest dimension (<= 64)");
  bounds->add_option("--samples,-n", bo.samples, "Monte Carlo samples per dimension");
  bounds->add_option("--seed", bo.seed, "Random seed");
  bounds->add_option("--format", bo.format, "Output format")->check(CLI::IsMember(formats));
  bounds->add_flag("--precision", bo.precision, "Use 1e8 samples");
  bounds->add_option("--out", bo.out, "Write to FILE instead of standard output");
  bounds->add_option("--workers", bo.workers, "Worker threads (0: all cores)");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run named checks (default: all)");
  verify->add_option("names", vo.names, "Check names, or 'all'");
  verify->add_option("--d", vo.d, "Dimension override");
  verify->add_option("--grid", vo.grid, "Grid size override");
  verify->add_option("--samples,-n", vo.samples, "Monte Carlo samples override");
  verify->add_option("--seed", vo.seed, "Random seed override");
  verify->add_option("--trials", vo.trials, "Random trials override");
  verify->add_option("--points", vo.points, "Points / h-values override");
  verify->add_option("--workers", vo.params.workers, "Worker threads (0: all cores)");
  verify->add_option("--format", vo.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", vo.out, "Write to FILE instead of standard output");

  RecordsOptions ro;
  auto* records = app.add_subcommand("records", "Compare record packing densities with the computed bounds");
  records->add_option("file", ro.file, "CSV with header d,density,name,source")->required();
  records->add_option("--dmin", ro.dmin, "Smallest dimension to bound");
  records->add_option("--dmax", ro.dmax, "Largest dimension to bound");
  records->add_option("--samples,-n", ro.samples, "Monte Carlo samples per dimension");
  records->add_option("--seed", ro.seed, "Random seed");
  records->add_option("--out", ro.out, "Write to FILE instead of standard output");
  records->add_option("--workers", ro.workers, "Worker threads (0: all cores)");

  PlotOptions po;
  auto* plot = app.add_subcommand("plot-data", "Tab-separated data for sigma_vs_d, gap_vs_d, dlim_profile, g_ratio");
  plot->add_option("kind", po.kind, "Data set")->required();
  plot->add_option("--dmin", po.dmin, "Smallest dimension");
  plot->add_option("--dmax", po.dmax, "Largest dimension");
  plot->add_option("--d", po.d, "Dimension for dlim_profile and g_ratio");
  plot->add_option("--points", po.points, "Number of points");
  plot->add_option("--samples,-n", po.samples, "Monte Carlo samples");
  plot->add_option("--seed", po.seed, "Random seed");
  plot->add_option("--out", po.out, "Write to FILE instead of standard output");
  plot->add_option("--workers", po.workers, "Worker threads (0: all cores)");

  std::vector<std::string> argv_storage{"spherebound"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(bo, out, err);
    if (verify->parsed()) return cmd_verify(vo, out, err);
    if (records->parsed()) return cmd_records(ro, out, err);
    return cmd_plot(po, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace spherebound::cli
