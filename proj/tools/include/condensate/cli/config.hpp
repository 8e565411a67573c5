#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "condensate/potentials.hpp"

namespace condensate::cli {

enum class Task { scatter, evolve, groundstate, two_body_convergence, second_moment, hierarchy_check, inequality_check };

std::string_view task_name(Task t);
// Throws ErrorKind::config with "unknown task '<name>'".
Task parse_task(std::string_view name);

struct PotentialSpec {
  std::string family = "zero";  // zero | soft-sphere | gaussian | tabulated
  double v0 = 0.0;
  double length = 0.0;  // radius (soft-sphere) or width (gaussian)
  std::string path;     // tabulated CSV
  double tail_exponent = std::numeric_limits<double>::infinity();
  bool normalize = false;  // rescale so that int V = 1
  bool operator==(const PotentialSpec&) const = default;
};

Potential make_potential(const PotentialSpec& spec);

struct ScatterParams {
  PotentialSpec potential;
  int scale = 1;
  double points_per_range = 400.0;
  double r_max = 0.0;  // 0: automatic
  double fit_tol = 1e-8;
  double tolerance = 1e-6;          // a0 consistency and 8 pi a0 identity, relative
  double closed_form_tol = 1e-8;    // soft-sphere closed form, relative
  bool operator==(const ScatterParams&) const = default;
};

struct InitialState {
  std::string kind = "gaussian";  // gaussian | plane-wave
  double width = 1.0;
  double momentum = 0.0;  // along the first axis
  int mode = 1;           // plane wave: k = 2 pi mode / L along the first axis
  double amplitude = 1.0;
  bool operator==(const InitialState&) const = default;
};

struct EvolveParams {
  int dimension = 1;
  int points = 0;  // per axis; 0: 128, 64, 32 for d = 1, 2, 3
  double box = 20.0;
  double coupling = 0.0;
  double trap_strength = 0.0;
  double dt = 1e-3;
  double t_end = 1.0;
  InitialState initial;
  int record_every = 50;  // steps between time-series rows
  double mass_tol = 1e-10;    // relative mass drift per unit time
  double energy_tol = 1e-8;   // relative energy drift over the run
  double phase_tol = 1e-6;    // plane waves only
  std::vector<double> refinement_dts;  // empty: skip the order check
  double order_tol = 0.1;
  bool operator==(const EvolveParams&) const = default;
};

struct GroundStateParams {
  int dimension = 1;
  int points = 0;  // per axis; 0: 128, 64, 32 for d = 1, 2, 3
  double box = 16.0;
  double coupling = 0.0;
  double trap_strength = 1.0;
  double dt = 0.01;
  double tol = 1e-10;
  int max_iterations = 200000;
  double energy_tol = 1e-4;  // against d sqrt(trap_strength) when coupling = 0
  bool operator==(const GroundStateParams&) const = default;
};

struct TwoBodyParams {
  PotentialSpec potential;
  std::vector<int> n_values{8, 16, 32, 64, 128, 256};
  std::vector<double> times{0.25, 0.5, 1.0};
  double packet_width = 1.0;
  double r_max = 20.0;
  double h = 0.02;
  double points_per_range = 20.0;
  double dt = 1e-3;
  double slope_max = -1.0 / 6.0 + 0.05;
  bool operator==(const TwoBodyParams&) const = default;
};

struct SecondMomentParams {
  PotentialSpec potential;
  int states = 10;
  double width_min = 0.5;
  double width_max = 1.5;
  double center_range = 1.0;
  double momentum_range = 1.0;
  double completeness_tol = 1e-3;
  double slack_tol = 1e-6;
  bool operator==(const SecondMomentParams&) const = default;
};

struct HierarchyParams {
  int dimension = 1;
  double coupling = 1.0;
  double box = 20.0;
  double width = 1.0;
  double momentum = 0.5;
  double t_end = 0.5;
  std::vector<double> dts{4e-3, 2e-3, 1e-3, 5e-4};
  std::vector<int> points{64, 96, 128, 160};
  double wrong_factor = 2.0;
  double order_min = 1.9;
  double separation = 10.0;
  double free_tol = 1e-8;
  bool operator==(const HierarchyParams&) const = default;
};

struct InequalityParams {
  std::string kind = "int1";  // int1 | trivv | vl1 | vl12 | theta
  // int1, trivv
  std::vector<double> p_values{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  double tolerance = 1e-4;
  // vl1, vl12
  PotentialSpec potential;
  int samples = 100;  // vl1 pairs or theta configurations; checked again at twice this
  std::vector<double> alphas;  // vl12; empty: 0.5, 0.25, ..., 2^-10
  std::string pair = "reference";  // vl12: reference | random
  double small_alpha = 1e-3;
  double small_alpha_tol = 1e-6;
  double stability_tol = 0.1;
  // theta
  int particles = 10;
  int k = 1;
  int n = 1;
  double ell = 0.0;  // 0: particles^{-2/5}
  double epsilon = 0.1;
  int refine = 4;
  int fd_samples = 20;
  double fd_tol = 1e-6;
  bool operator==(const InequalityParams&) const = default;
};

using TaskParams = std::variant<ScatterParams, EvolveParams, GroundStateParams, TwoBodyParams, SecondMomentParams,
                                HierarchyParams, InequalityParams>;

struct RunConfig {
  Task task = Task::scatter;
  std::uint64_t seed = 0;
  TaskParams params;
  bool operator==(const RunConfig&) const = default;
};

// Parses a JSON document. Unknown keys, missing required keys, wrong types
// and non-positive tolerances raise ErrorKind::config naming the key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

// Canonical JSON with every key spelled out; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& cfg);

// FNV-1a 64 of serialize(cfg), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace condensate::cli
