#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace condensate::cli {

struct Check {
  std::string anchor;  // stable identifier of the property being checked
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// One CSV file: header row then numeric rows.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string task;
  std::string config_hash;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::optional<double> runtime_s;
  std::vector<Table> tables;

  // value <= threshold
  void check_at_most(const std::string& anchor, double value, double threshold);
  // value >= threshold
  void check_at_least(const std::string& anchor, double value, double threshold);
  bool passed() const;
};

std::string report_json(const Report& r);
std::string table_csv(const Table& t);

// Writes <task>.json and <task>_<table>.csv into dir (created if needed);
// returns the paths written.
std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir);

}  // namespace condensate::cli
