#include <charconv>
#include <istream>
#include <set>
#include <string>
#include <utility>

#include "cli.hpp"

namespace spherebound::cli {

bool RecordRow::context_only() const { return source.rfind("other upper bound", 0) == 0; }

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Strips one level of CSV quoting ("a, b" -> a, b; "" -> ").
std::string unquote(const std::string& s) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') return s;
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    out += s[i];
    if (s[i] == '"' && s[i + 1] == '"') ++i;
  }
  return out;
}

}  // namespace

std::vector<RecordRow> parse_records(std::istream& in) {
  std::vector<RecordRow> rows;
  std::set<std::pair<int, std::string>> seen;
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "d,density,name,source") throw RecordsError(number, "expected header d,density,name,source");
      header = true;
      continue;
    }
    // The source column may itself contain commas.
    std::string fields[4];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const auto comma = line.find(',', pos);
      if (comma == std::string::npos) throw RecordsError(number, "expected 4 comma-separated fields");
      fields[i] = trim(line.substr(pos, comma - pos));
      pos = comma + 1;
    }
    fields[3] = trim(line.substr(pos));

    RecordRow row;
    const auto& d = fields[0];
    auto [dp, dec] = std::from_chars(d.data(), d.data() + d.size(), row.d);
    if (dec != std::errc() || dp != d.data() + d.size() || row.d < 2) {
      throw RecordsError(number, "dimension must be an integer >= 2, got '" + d + "'");
    }
    std::size_t used = 0;
    try {
      row.density = std::stod(fields[1], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != fields[1].size() || !(row.density > 0.0 && row.density <= 1.0)) {
      throw RecordsError(number, "density must be a number in (0, 1], got '" + fields[1] + "'");
    }
    row.name = fields[2];
    row.source = unquote(fields[3]);
    if (row.name.empty()) throw RecordsError(number, "empty name");
    if (!seen.emplace(row.d, row.name).second) throw RecordsError(number, "duplicate (d, name) row");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace spherebound::cli
