#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "condensate/cli/config.hpp"
#include "condensate/cli/report.hpp"
#include "condensate/cli/runner.hpp"
#include "condensate/error.hpp"

namespace cli = condensate::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for dilute Bose gas dynamics", "condensate-lab"};
  std::string task;
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool timing = false;
  app.add_option("task", task, "scatter, evolve, groundstate, two-body-convergence, second-moment, "
                               "hierarchy-check or inequality-check")
      ->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_option("--out", out_dir, "directory for the JSON report and CSV files");
  auto* seed_opt = app.add_option("--seed", seed, "overrides the config seed");
  app.add_flag("--timing", timing, "record wall time in runtime_s (breaks byte-identical reports)");
  CLI11_PARSE(app, argc, argv);

  try {
    const cli::Task requested = cli::parse_task(task);
    cli::RunConfig cfg = cli::load_config(config_path);
    if (cfg.task != requested) {
      throw condensate::Error(condensate::ErrorKind::config,
                              "config is for task '" + std::string(cli::task_name(cfg.task)) + "'");
    }
    if (*seed_opt) cfg.seed = seed;

    const auto start = std::chrono::steady_clock::now();
    cli::Report report = cli::run(cfg);
    if (timing) {
      report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    for (const auto& path : cli::write_report(report, out_dir)) std::cout << "wrote " << path.string() << "\n";
    for (const auto& c : report.checks) {
      std::printf("%s %-40s value=%.6g threshold=%.6g\n", c.pass ? "PASS" : "FAIL", c.anchor.c_str(), c.value,
                  c.threshold);
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << task << ": " << e.what() << "\n";
    return 2;
  }
}
