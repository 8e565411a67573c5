#include "condensate/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <regex>
#include <set>
#include <sstream>

#include "condensate/error.hpp"

namespace condensate::cli {

namespace {

using json = nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr std::pair<Task, std::string_view> kTaskNames[] = {
    {Task::scatter, "scatter"},
    {Task::evolve, "evolve"},
    {Task::groundstate, "groundstate"},
    {Task::two_body_convergence, "two-body-convergence"},
    {Task::second_moment, "second-moment"},
    {Task::hierarchy_check, "hierarchy-check"},
    {Task::inequality_check, "inequality-check"},
};

[[noreturn]] void config_error(const std::string& where, const std::string& msg) {
  fail(ErrorKind::config, where.empty() ? msg : where + ": " + msg);
}

// Reads keys from one JSON object and remembers which were consumed, so
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) config_error(where_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  template <class T>
  void get(const std::string& key, T& out) {
    if (!obj_.contains(key)) return;
    used_.insert(key);
    try {
      out = obj_.at(key).get<T>();
    } catch (const json::exception&) {
      config_error(path(key), "wrong type");
    }
  }

  template <class T>
  void require(const std::string& key, T& out) {
    if (!obj_.contains(key)) config_error(where_, "missing required key '" + key + "'");
    get(key, out);
  }

  void positive(const std::string& key, double& out) {
    get(key, out);
    if (!(out > 0.0) || !std::isfinite(out)) config_error(path(key), "must be positive");
  }

  void positive(const std::string& key, int& out) {
    get(key, out);
    if (out <= 0) config_error(path(key), "must be positive");
  }

  const json& child(const std::string& key) {
    used_.insert(key);
    return obj_.at(key);
  }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (!used_.count(item.key())) config_error(where_, "unknown key '" + item.key() + "'");
    }
  }

  std::string path(const std::string& key) const { return where_.empty() ? key : where_ + "." + key; }

 private:
  const json& obj_;
  std::string where_;
  std::set<std::string> used_;
};

PotentialSpec parse_potential_shorthand(const std::string& text, const std::string& where) {
  static const std::regex pattern(R"(\s*([a-z-]+)\s*(?:\((.*)\))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) config_error(where, "cannot parse potential '" + text + "'");
  PotentialSpec spec;
  spec.family = m[1];
  std::vector<std::string> args;
  if (m[2].matched) {
    std::stringstream ss(m[2].str());
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(item);
  }
  auto number = [&](std::size_t i) {
    try {
      return std::stod(args.at(i));
    } catch (const std::exception&) {
      config_error(where, "bad numeric argument in '" + text + "'");
    }
  };
  if (spec.family == "zero") {
    if (!args.empty()) config_error(where, "zero takes no arguments");
  } else if (spec.family == "soft-sphere" || spec.family == "gaussian") {
    if (args.size() != 2) config_error(where, spec.family + " takes (v0, length)");
    spec.v0 = number(0);
    spec.length = number(1);
  } else if (spec.family == "tabulated") {
    if (args.empty() || args.size() > 2) config_error(where, "tabulated takes (path[, tail_exponent])");
    spec.path = args[0];
    if (args.size() == 2) spec.tail_exponent = number(1);
  } else {
    config_error(where, "unknown potential family '" + spec.family + "'");
  }
  return spec;
}

PotentialSpec parse_potential(const json& node, const std::string& where) {
  if (node.is_string()) return parse_potential_shorthand(node.get<std::string>(), where);
  Reader r(node, where);
  PotentialSpec spec;
  r.require("family", spec.family);
  if (spec.family == "soft-sphere") {
    r.require("v0", spec.v0);
    r.require("radius", spec.length);
  } else if (spec.family == "gaussian") {
    r.require("v0", spec.v0);
    r.require("width", spec.length);
  } else if (spec.family == "tabulated") {
    r.require("path", spec.path);
    r.get("tail_exponent", spec.tail_exponent);
  } else if (spec.family != "zero") {
    config_error(r.path("family"), "unknown potential family '" + spec.family + "'");
  }
  r.get("normalize", spec.normalize);
  r.finish();
  return spec;
}

ordered potential_json(const PotentialSpec& spec) {
  ordered out;
  out["family"] = spec.family;
  if (spec.family == "soft-sphere") {
    out["v0"] = spec.v0;
    out["radius"] = spec.length;
  } else if (spec.family == "gaussian") {
    out["v0"] = spec.v0;
    out["width"] = spec.length;
  } else if (spec.family == "tabulated") {
    out["path"] = spec.path;
    if (std::isfinite(spec.tail_exponent)) out["tail_exponent"] = spec.tail_exponent;
  }
  out["normalize"] = spec.normalize;
  return out;
}

void read_potential(Reader& r, PotentialSpec& spec) {
  if (!r.has("potential")) config_error("", "missing required key 'potential'");
  spec = parse_potential(r.child("potential"), "potential");
}

ScatterParams parse_scatter(Reader& r) {
  ScatterParams p;
  read_potential(r, p.potential);
  r.get("scale", p.scale);
  if (p.scale < 1) config_error("scale", "must be >= 1");
  r.positive("points_per_range", p.points_per_range);
  r.get("r_max", p.r_max);
  if (p.r_max < 0.0) config_error("r_max", "must be >= 0");
  r.positive("fit_tol", p.fit_tol);
  r.positive("tolerance", p.tolerance);
  r.positive("closed_form_tol", p.closed_form_tol);
  return p;
}

InitialState parse_initial(const json& node) {
  Reader r(node, "initial");
  InitialState s;
  r.get("kind", s.kind);
  if (s.kind != "gaussian" && s.kind != "plane-wave") config_error("initial.kind", "expected gaussian or plane-wave");
  r.positive("width", s.width);
  r.get("momentum", s.momentum);
  r.get("mode", s.mode);
  r.positive("amplitude", s.amplitude);
  r.finish();
  return s;
}

void check_dimension(int d) {
  if (d != 1 && d != 2 && d != 3) config_error("dimension", "must be 1, 2 or 3");
}

EvolveParams parse_evolve(Reader& r) {
  EvolveParams p;
  r.get("dimension", p.dimension);
  check_dimension(p.dimension);
  r.get("points", p.points);
  if (p.points < 0 || p.points == 1) config_error("points", "must be 0 (automatic) or >= 2");
  r.positive("box", p.box);
  r.get("coupling", p.coupling);
  r.get("trap_strength", p.trap_strength);
  if (p.trap_strength < 0.0) config_error("trap_strength", "must be >= 0");
  r.positive("dt", p.dt);
  r.positive("t_end", p.t_end);
  if (r.has("initial")) p.initial = parse_initial(r.child("initial"));
  r.positive("record_every", p.record_every);
  r.positive("mass_tol", p.mass_tol);
  r.positive("energy_tol", p.energy_tol);
  r.positive("phase_tol", p.phase_tol);
  r.get("refinement_dts", p.refinement_dts);
  for (double dt : p.refinement_dts) {
    if (!(dt > 0.0)) config_error("refinement_dts", "entries must be positive");
  }
  if (!p.refinement_dts.empty() && p.refinement_dts.size() < 2) config_error("refinement_dts", "need at least two");
  r.positive("order_tol", p.order_tol);
  return p;
}

GroundStateParams parse_groundstate(Reader& r) {
  GroundStateParams p;
  r.get("dimension", p.dimension);
  check_dimension(p.dimension);
  r.get("points", p.points);
  if (p.points < 0 || p.points == 1) config_error("points", "must be 0 (automatic) or >= 2");
  r.positive("box", p.box);
  r.get("coupling", p.coupling);
  r.get("trap_strength", p.trap_strength);
  if (p.trap_strength < 0.0) config_error("trap_strength", "must be >= 0");
  r.positive("dt", p.dt);
  r.positive("tol", p.tol);
  r.positive("max_iterations", p.max_iterations);
  r.positive("energy_tol", p.energy_tol);
  return p;
}

TwoBodyParams parse_two_body(Reader& r) {
  TwoBodyParams p;
  read_potential(r, p.potential);
  r.get("n_values", p.n_values);
  if (p.n_values.size() < 2) config_error("n_values", "need at least two");
  for (int n : p.n_values) {
    if (n < 1) config_error("n_values", "entries must be >= 1");
  }
  r.get("times", p.times);
  if (p.times.empty()) config_error("times", "must not be empty");
  for (double t : p.times) {
    if (!(t > 0.0)) config_error("times", "entries must be positive");
  }
  r.positive("packet_width", p.packet_width);
  r.positive("r_max", p.r_max);
  r.positive("h", p.h);
  r.positive("points_per_range", p.points_per_range);
  r.positive("dt", p.dt);
  r.get("slope_max", p.slope_max);
  return p;
}

SecondMomentParams parse_second_moment(Reader& r) {
  SecondMomentParams p;
  read_potential(r, p.potential);
  r.positive("states", p.states);
  r.positive("width_min", p.width_min);
  r.positive("width_max", p.width_max);
  if (p.width_max < p.width_min) config_error("width_max", "must be >= width_min");
  r.get("center_range", p.center_range);
  r.get("momentum_range", p.momentum_range);
  r.positive("completeness_tol", p.completeness_tol);
  r.positive("slack_tol", p.slack_tol);
  return p;
}

HierarchyParams parse_hierarchy(Reader& r) {
  HierarchyParams p;
  r.get("dimension", p.dimension);
  if (p.dimension != 1) config_error("dimension", "hierarchy checks support dimension 1 only");
  r.get("coupling", p.coupling);
  r.positive("box", p.box);
  r.positive("width", p.width);
  r.get("momentum", p.momentum);
  r.positive("t_end", p.t_end);
  r.get("dts", p.dts);
  r.get("points", p.points);
  if (p.dts.size() < 2) config_error("dts", "need at least two refinement levels");
  if (p.points.size() != p.dts.size()) config_error("points", "must have one entry per dts entry");
  for (double dt : p.dts) {
    if (!(dt > 0.0)) config_error("dts", "entries must be positive");
  }
  for (int m : p.points) {
    if (m < 4) config_error("points", "entries must be >= 4");
  }
  r.positive("wrong_factor", p.wrong_factor);
  r.get("order_min", p.order_min);
  r.positive("separation", p.separation);
  r.positive("free_tol", p.free_tol);
  return p;
}

InequalityParams parse_inequality(Reader& r) {
  InequalityParams p;
  r.require("kind", p.kind);
  if (p.kind == "int1" || p.kind == "trivv") {
    r.get("p_values", p.p_values);
    if (p.p_values.empty()) config_error("p_values", "must not be empty");
    r.positive("tolerance", p.tolerance);
  } else if (p.kind == "vl1") {
    read_potential(r, p.potential);
    r.positive("samples", p.samples);
    r.get("refine", p.refine);
    if (p.refine < 0) config_error("refine", "must be >= 0");
    r.positive("stability_tol", p.stability_tol);
  } else if (p.kind == "vl12") {
    read_potential(r, p.potential);
    r.get("alphas", p.alphas);
    for (double a : p.alphas) {
      if (!(a > 0.0)) config_error("alphas", "entries must be positive");
    }
    r.get("pair", p.pair);
    if (p.pair != "reference" && p.pair != "random") config_error("pair", "expected reference or random");
    r.positive("small_alpha", p.small_alpha);
    r.positive("small_alpha_tol", p.small_alpha_tol);
  } else if (p.kind == "theta") {
    p.samples = 1000;
    r.positive("samples", p.samples);
    if (p.samples < 100) config_error("samples", "theta needs at least 100 samples");
    r.positive("particles", p.particles);
    r.positive("k", p.k);
    r.positive("n", p.n);
    if (p.k >= p.particles) config_error("k", "must be smaller than particles");
    r.get("ell", p.ell);
    if (p.ell < 0.0) config_error("ell", "must be >= 0");
    r.positive("epsilon", p.epsilon);
    if (p.epsilon >= 1.0) config_error("epsilon", "must be < 1");
    r.get("refine", p.refine);
    if (p.refine < 0) config_error("refine", "must be >= 0");
    r.positive("fd_samples", p.fd_samples);
    r.positive("fd_tol", p.fd_tol);
    r.positive("stability_tol", p.stability_tol);
  } else {
    config_error("kind", "unknown inequality kind '" + p.kind + "'");
  }
  return p;
}

ordered params_json(const TaskParams& params) {
  ordered o;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ScatterParams>) {
          o["potential"] = potential_json(p.potential);
          o["scale"] = p.scale;
          o["points_per_range"] = p.points_per_range;
          o["r_max"] = p.r_max;
          o["fit_tol"] = p.fit_tol;
          o["tolerance"] = p.tolerance;
          o["closed_form_tol"] = p.closed_form_tol;
        } else if constexpr (std::is_same_v<T, EvolveParams>) {
          o["dimension"] = p.dimension;
          o["points"] = p.points;
          o["box"] = p.box;
          o["coupling"] = p.coupling;
          o["trap_strength"] = p.trap_strength;
          o["dt"] = p.dt;
          o["t_end"] = p.t_end;
          ordered init;
          init["kind"] = p.initial.kind;
          init["width"] = p.initial.width;
          init["momentum"] = p.initial.momentum;
          init["mode"] = p.initial.mode;
          init["amplitude"] = p.initial.amplitude;
          o["initial"] = init;
          o["record_every"] = p.record_every;
          o["mass_tol"] = p.mass_tol;
          o["energy_tol"] = p.energy_tol;
          o["phase_tol"] = p.phase_tol;
          o["refinement_dts"] = p.refinement_dts;
          o["order_tol"] = p.order_tol;
        } else if constexpr (std::is_same_v<T, GroundStateParams>) {
          o["dimension"] = p.dimension;
          o["points"] = p.points;
          o["box"] = p.box;
          o["coupling"] = p.coupling;
          o["trap_strength"] = p.trap_strength;
          o["dt"] = p.dt;
          o["tol"] = p.tol;
          o["max_iterations"] = p.max_iterations;
          o["energy_tol"] = p.energy_tol;
        } else if constexpr (std::is_same_v<T, TwoBodyParams>) {
          o["potential"] = potential_json(p.potential);
          o["n_values"] = p.n_values;
          o["times"] = p.times;
          o["packet_width"] = p.packet_width;
          o["r_max"] = p.r_max;
          o["h"] = p.h;
          o["points_per_range"] = p.points_per_range;
          o["dt"] = p.dt;
          o["slope_max"] = p.slope_max;
        } else if constexpr (std::is_same_v<T, SecondMomentParams>) {
          o["potential"] = potential_json(p.potential);
          o["states"] = p.states;
          o["width_min"] = p.width_min;
          o["width_max"] = p.width_max;
          o["center_range"] = p.center_range;
          o["momentum_range"] = p.momentum_range;
          o["completeness_tol"] = p.completeness_tol;
          o["slack_tol"] = p.slack_tol;
        } else if constexpr (std::is_same_v<T, HierarchyParams>) {
          o["dimension"] = p.dimension;
          o["coupling"] = p.coupling;
          o["box"] = p.box;
          o["width"] = p.width;
          o["momentum"] = p.momentum;
          o["t_end"] = p.t_end;
          o["dts"] = p.dts;
          o["points"] = p.points;
          o["wrong_factor"] = p.wrong_factor;
          o["order_min"] = p.order_min;
          o["separation"] = p.separation;
          o["free_tol"] = p.free_tol;
        } else if constexpr (std::is_same_v<T, InequalityParams>) {
          o["kind"] = p.kind;
          if (p.kind == "int1" || p.kind == "trivv") {
            o["p_values"] = p.p_values;
            o["tolerance"] = p.tolerance;
          } else if (p.kind == "vl1") {
            o["potential"] = potential_json(p.potential);
            o["samples"] = p.samples;
            o["refine"] = p.refine;
            o["stability_tol"] = p.stability_tol;
          } else if (p.kind == "vl12") {
            o["potential"] = potential_json(p.potential);
            o["alphas"] = p.alphas;
            o["pair"] = p.pair;
            o["small_alpha"] = p.small_alpha;
            o["small_alpha_tol"] = p.small_alpha_tol;
          } else {
            o["samples"] = p.samples;
            o["particles"] = p.particles;
            o["k"] = p.k;
            o["n"] = p.n;
            o["ell"] = p.ell;
            o["epsilon"] = p.epsilon;
            o["refine"] = p.refine;
            o["fd_samples"] = p.fd_samples;
            o["fd_tol"] = p.fd_tol;
            o["stability_tol"] = p.stability_tol;
          }
        }
      },
      params);
  return o;
}

}  // namespace

std::string_view task_name(Task t) {
  for (const auto& [task, name] : kTaskNames) {
    if (task == t) return name;
  }
  return "?";
}

Task parse_task(std::string_view name) {
  for (const auto& [task, n] : kTaskNames) {
    if (n == name) return task;
  }
  fail(ErrorKind::config, "unknown task '" + std::string(name) + "'");
}

Potential make_potential(const PotentialSpec& spec) {
  auto build = [&](double scale_v) {
    if (spec.family == "zero") return Potential::zero();
    if (spec.family == "soft-sphere") return Potential::soft_sphere(spec.v0 * scale_v, spec.length);
    if (spec.family == "gaussian") return Potential::gaussian(spec.v0 * scale_v, spec.length);
    if (spec.family == "tabulated") {
      auto base = Potential::tabulated_csv(spec.path, spec.tail_exponent);
      if (scale_v == 1.0) return base;
      auto v = base.table_v();
      for (auto& x : v) x *= scale_v;
      return Potential::tabulated(base.table_r(), v, spec.tail_exponent);
    }
    fail(ErrorKind::config, "unknown potential family '" + spec.family + "'");
  };
  Potential p = build(1.0);
  if (!spec.normalize) return p;
  if (p.is_zero()) fail(ErrorKind::config, "potential.normalize: cannot normalize the zero potential");
  return build(1.0 / norms(p).l1);
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, std::string("malformed config: ") + e.what());
  }
  Reader r(doc, "");
  RunConfig cfg;
  std::string task;
  r.require("task", task);
  cfg.task = parse_task(task);
  r.get("seed", cfg.seed);
  switch (cfg.task) {
    case Task::scatter: cfg.params = parse_scatter(r); break;
    case Task::evolve: cfg.params = parse_evolve(r); break;
    case Task::groundstate: cfg.params = parse_groundstate(r); break;
    case Task::two_body_convergence: cfg.params = parse_two_body(r); break;
    case Task::second_moment: cfg.params = parse_second_moment(r); break;
    case Task::hierarchy_check: cfg.params = parse_hierarchy(r); break;
    case Task::inequality_check: cfg.params = parse_inequality(r); break;
  }
  r.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  ordered doc;
  doc["task"] = std::string(task_name(cfg.task));
  doc["seed"] = cfg.seed;
  const ordered params = params_json(cfg.params);
  for (const auto& item : params.items()) doc[item.key()] = item.value();
  return doc.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace condensate::cli
