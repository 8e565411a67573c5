#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "condensate/cli/config.hpp"
#include "condensate/cli/report.hpp"
#include "condensate/cli/runner.hpp"
#include "support.hpp"

using namespace condensate;
using namespace condensate::cli;
using condensate::testing::error_kind;

namespace {

// Message of the configuration error raised by parsing text.
std::string config_error(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

const Check* find_check(const Report& r, const std::string& anchor) {
  for (const auto& c : r.checks) {
    if (c.anchor == anchor) return &c;
  }
  return nullptr;
}

}  // namespace

TEST(Config, MinimalScatterGetsDefaults) {
  const auto cfg = parse_config(R"j({"task": "scatter", "potential": "soft-sphere(2,1)"})j");
  EXPECT_EQ(cfg.task, Task::scatter);
  EXPECT_EQ(cfg.seed, 0u);
  const auto& p = std::get<ScatterParams>(cfg.params);
  EXPECT_EQ(p.potential.family, "soft-sphere");
  EXPECT_EQ(p.potential.v0, 2.0);
  EXPECT_EQ(p.potential.length, 1.0);
  EXPECT_EQ(p.scale, 1);
  EXPECT_EQ(p.tolerance, 1e-6);
}

TEST(Config, UnknownTask) {
  EXPECT_NE(config_error(R"j({"task": "frobnicate"})j").find("unknown task"), std::string::npos);
  EXPECT_EQ(error_kind([] { (void)parse_task("frobnicate"); }), ErrorKind::config);
}

TEST(Config, MissingRequiredKey) {
  EXPECT_NE(config_error(R"j({"task": "scatter"})j").find("potential"), std::string::npos);
}

TEST(Config, UnknownKeyIsNamed) {
  const auto msg = config_error(R"j({"task": "scatter", "potential": "soft-sphere(2,1)", "colour": 3})j");
  EXPECT_NE(msg.find("colour"), std::string::npos);
}

TEST(Config, NonPositiveToleranceIsRejected) {
  const auto msg = config_error(R"j({"task": "scatter", "potential": "soft-sphere(2,1)", "tolerance": 0})j");
  EXPECT_NE(msg.find("tolerance"), std::string::npos);
}

TEST(Config, WrongTypeIsRejected) {
  const auto msg = config_error(R"j({"task": "evolve", "dimension": "three"})j");
  EXPECT_NE(msg.find("dimension"), std::string::npos);
}

TEST(Config, SerializeRoundTripsEveryShippedConfig) {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(CONDENSATE_SOURCE_DIR) / "configs")) {
    if (entry.path().extension() != ".json") continue;
    SCOPED_TRACE(entry.path().filename().string());
    const auto cfg = load_config(entry.path().string());
    const auto again = parse_config(serialize(cfg));
    EXPECT_TRUE(again == cfg);
    EXPECT_EQ(serialize(again), serialize(cfg));
    EXPECT_EQ(config_hash(again), config_hash(cfg));
    EXPECT_EQ(config_hash(cfg).size(), 16u);
    ++seen;
  }
  EXPECT_GE(seen, 10);
}

TEST(Config, SeedChangesTheHash) {
  auto cfg = parse_config(R"j({"task": "scatter", "potential": "soft-sphere(2,1)"})j");
  const auto h = config_hash(cfg);
  cfg.seed = 7;
  EXPECT_NE(config_hash(cfg), h);
}

TEST(Runner, ScatterSoftSphere) {
  const auto rep = run(parse_config(R"j({"task": "scatter", "potential": "soft-sphere(2,1)"})j"));
  EXPECT_EQ(rep.task, "scatter");
  EXPECT_TRUE(rep.passed());
  const double a0 = rep.results.at("a0_asym").get<double>();
  EXPECT_NEAR(a0, 1.0 - std::tanh(1.0), 1e-8);
  ASSERT_NE(find_check(rep, "scattering-length.closed-form"), nullptr);
  EXPECT_TRUE(find_check(rep, "scattering-length.closed-form")->pass);
}

TEST(Runner, ReportsAreByteIdentical) {
  const auto cfg = parse_config(R"j({"task": "scatter", "potential": "gaussian(1,1)"})j");
  const auto a = run(cfg);
  const auto b = run(cfg);
  EXPECT_EQ(report_json(a), report_json(b));
  EXPECT_FALSE(a.runtime_s.has_value());
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) EXPECT_EQ(table_csv(a.tables[i]), table_csv(b.tables[i]));
}

TEST(Runner, FreePlaneWavePassesPhaseCheck) {
  const auto rep = run(parse_config(R"j({"task": "evolve", "dimension": 1, "points": 64, "box": 10,
      "coupling": 0, "dt": 0.001, "t_end": 0.5, "initial": {"kind": "plane-wave", "mode": 3}})j"));
  const Check* phase = find_check(rep, "gp.plane-wave-dispersion");
  ASSERT_NE(phase, nullptr);
  EXPECT_TRUE(phase->pass);
  EXPECT_LE(phase->value, 1e-10);
  EXPECT_TRUE(rep.passed());
}

TEST(Runner, ErrorsCarryTheirKind) {
  const auto cfg = parse_config(R"j({"task": "evolve", "dimension": 1, "points": 512, "box": 10, "dt": 0.5,
      "t_end": 1})j");
  EXPECT_EQ(error_kind([&] { (void)run(cfg); }), ErrorKind::step_size);
}

TEST(Report, WritesJsonAndTables) {
  Report r;
  r.task = "demo";
  r.config_hash = "0123456789abcdef";
  r.results["x"] = 1.5;
  r.check_at_most("demo.small", 0.5, 1.0);
  r.check_at_least("demo.large", 0.5, 1.0);
  r.tables.push_back({"series", {"t", "v"}, {{0.0, 1.0}, {0.5, 2.0}}});
  EXPECT_FALSE(r.passed());
  const auto dir = std::filesystem::temp_directory_path() / "condensate-report-test";
  std::filesystem::remove_all(dir);
  const auto paths = write_report(r, dir);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].filename(), "demo.json");
  EXPECT_EQ(paths[1].filename(), "demo_series.csv");
  std::ifstream csv(paths[1]);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,v");
  const auto json = nlohmann::json::parse(std::ifstream(paths[0]));
  EXPECT_EQ(json.at("task"), "demo");
  EXPECT_EQ(json.at("checks").size(), 2u);
  std::filesystem::remove_all(dir);
}
