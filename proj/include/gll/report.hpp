#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gll/abrikosov.hpp"
#include "gll/gl3d.hpp"
#include "gll/verify.hpp"

namespace gll {

// Shortest round-trip decimal representation (to_chars); the one float
// format used in every CSV/JSON/plotdata emission so golden files and the
// bitwise-reproducibility contract are meaningful.
std::string format_double(double x);

// CSV with a fixed, documented column order.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
};

CsvTable min_result_table(const std::string& command, const std::vector<MinResult>& results);
CsvTable spectrum_table(const Spectrum& s);
CsvTable cell_stats_table(const CellStats& stats);
CsvTable g_estimate_table(const GEstimate& g);
CsvTable abrikosov_table(const std::vector<AbrikosovResult>& results);

// plotdata: "# series <name>" header lines, whitespace-separated columns.
std::string plotdata(const std::vector<std::pair<std::string, std::vector<std::array<double, 2>>>>& series);

struct SweepReport {
  std::vector<InequalityReport> reports;
  bool aggregate_pass = true;
  std::string to_json() const;
};

std::string inequality_to_json(const InequalityReport& r);

// Run manifest: command line, parameters, seeds, tolerances, version,
// wall-clock and cache statistics. Serializes to JSON.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  std::map<std::string, std::string> params;
  std::string version;
  double wall_seconds = 0.0;
  int cache_hits = 0;
  int cache_misses = 0;
  std::string to_json() const;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace gll
