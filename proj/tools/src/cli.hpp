// Command-line front end: bound tables, verification runs, record
// comparison and plot data. Everything is reachable through run() so tests
// can drive it without a process boundary.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace spherebound::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kInconclusive = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// x rounded to `digits` significant decimal digits (non-finite values pass through).
double round_significant(double x, int digits = 9);

struct RecordRow {
  int d = 0;
  double density = 0.0;
  std::string name;
  std::string source;

  /// Rows whose source starts with "other upper bound" are shown for context
  /// and never compared as packings.
  [[nodiscard]] bool context_only() const;
};

class RecordsError : public std::runtime_error {
 public:
  RecordsError(int line, const std::string& what) : std::runtime_error(what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

/// CSV with header `d,density,name,source`. An empty input is an empty table.
std::vector<RecordRow> parse_records(std::istream& in);

}  // namespace spherebound::cli
