#include "gll/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gll/version.hpp"

namespace gll {

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

CsvTable min_result_table(const std::string& command, const std::vector<MinResult>& results) {
  CsvTable t;
  t.header = {"command", "b",        "R",      "L",         "counts",  "seed",
              "value",   "kinetic",  "mass",   "quartic",   "total",   "residual",
              "iterations", "converged"};
  for (const MinResult& r : results) {
    const Provenance& p = r.provenance;
    t.rows.push_back({command, format_double(p.b), format_double(p.R), format_double(p.L),
                      std::to_string(p.counts[0]), std::to_string(p.seed),
                      format_double(r.value), format_double(r.breakdown.kinetic_raw),
                      format_double(r.breakdown.mass), format_double(r.breakdown.quartic),
                      format_double(r.breakdown.total), format_double(r.residual),
                      std::to_string(r.iterations), r.converged ? "1" : "0"});
  }
  return t;
}

CsvTable spectrum_table(const Spectrum& s) {
  CsvTable t;
  t.header = {"index", "eigenvalue", "cluster"};
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    int cluster = -1;
    for (std::size_t c = 0; c < s.clusters.size(); ++c)
      if (static_cast<int>(i) >= s.clusters[c].first && static_cast<int>(i) < s.clusters[c].second)
        cluster = static_cast<int>(c);
    t.rows.push_back({std::to_string(i + 1), format_double(s.eigenvalues[i]),
                      std::to_string(cluster)});
  }
  return t;
}

CsvTable cell_stats_table(const CellStats& stats) {
  CsvTable t;
  t.header = {"cx", "cy", "cz", "mean_sq", "mean_quartic", "local_kinetic", "local_mass",
              "local_quartic", "local_total"};
  for (const CellRecord& c : stats.cells)
    t.rows.push_back({format_double(c.box.center[0]), format_double(c.box.center[1]),
                      format_double(c.box.center[2]), format_double(c.mean_sq),
                      format_double(c.mean_quartic), format_double(c.local.kinetic_raw),
                      format_double(c.local.mass), format_double(c.local.quartic),
                      format_double(c.local.total)});
  return t;
}

CsvTable g_estimate_table(const GEstimate& g) {
  CsvTable t;
  t.header = {"b", "R", "value_over_R2", "extrapolated_g", "fitted_C", "fit_residual"};
  for (const auto& [R, y] : g.values)
    t.rows.push_back({format_double(g.b), format_double(R), format_double(y),
                      format_double(g.extrapolated_g), format_double(g.fitted_C),
                      format_double(g.fit_residual)});
  return t;
}

CsvTable abrikosov_table(const std::vector<AbrikosovResult>& results) {
  CsvTable t;
  t.header = {"n", "R", "cR", "cR_over_R2", "stationarity_defect", "pairing_defect",
              "value_spread", "converged"};
  for (const AbrikosovResult& r : results)
    t.rows.push_back({std::to_string(r.n), format_double(r.R), format_double(r.value),
                      format_double(r.value / (r.R * r.R)), format_double(r.stationarity_defect),
                      format_double(r.pairing_defect), format_double(r.value_spread),
                      r.converged ? "1" : "0"});
  return t;
}

std::string plotdata(
    const std::vector<std::pair<std::string, std::vector<std::array<double, 2>>>>& series) {
  std::ostringstream os;
  for (const auto& [name, pts] : series) {
    os << "# series " << name << "\n";
    for (const auto& p : pts) os << format_double(p[0]) << " " << format_double(p[1]) << "\n";
  }
  return os.str();
}

namespace {

nlohmann::ordered_json inequality_json(const InequalityReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack_used"] = r.slack_used;
  j["holds"] = r.holds;
  j["note"] = r.note;
  nlohmann::ordered_json d;
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = d;
  return j;
}

}  // namespace

std::string inequality_to_json(const InequalityReport& r) {
  return inequality_json(r).dump(2);
}

std::string SweepReport::to_json() const {
  nlohmann::ordered_json j;
  j["aggregate_pass"] = aggregate_pass;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const InequalityReport& r : reports) arr.push_back(inequality_json(r));
  j["reports"] = arr;
  return j.dump(2);
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["args"] = args;
  nlohmann::ordered_json p;
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["version"] = version.empty() ? kVersion : version;
  j["wall_seconds"] = wall_seconds;
  j["cache_hits"] = cache_hits;
  j["cache_misses"] = cache_misses;
  return j.dump(2);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for write: " + path);
  os << content;
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace gll
