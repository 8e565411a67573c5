#include "condensate/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "condensate/error.hpp"

namespace condensate::cli {

namespace {

// Non-finite values have no JSON spelling; they are reported as strings.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for '" + path.string() + "'");
}

}  // namespace

void Report::check_at_most(const std::string& anchor, double value, double threshold) {
  checks.push_back({anchor, value, threshold, value <= threshold});
}

void Report::check_at_least(const std::string& anchor, double value, double threshold) {
  checks.push_back({anchor, value, threshold, value >= threshold});
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json doc;
  doc["task"] = r.task;
  doc["config_hash"] = r.config_hash;
  doc["results"] = r.results;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json item;
    item["anchor"] = c.anchor;
    item["value"] = number(c.value);
    item["threshold"] = number(c.threshold);
    item["pass"] = c.pass;
    checks.push_back(item);
  }
  doc["checks"] = checks;
  doc["runtime_s"] = r.runtime_s ? nlohmann::ordered_json(*r.runtime_s) : nlohmann::ordered_json(nullptr);
  return doc.dump(2) + "\n";
}

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format(row[i]);
    out += "\n";
  }
  return out;
}

std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::io, "cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  written.push_back(dir / (r.task + ".json"));
  write_file(written.back(), report_json(r));
  for (const auto& t : r.tables) {
    written.push_back(dir / (r.task + "_" + t.name + ".csv"));
    write_file(written.back(), table_csv(t));
  }
  return written;
}

}  // namespace condensate::cli
