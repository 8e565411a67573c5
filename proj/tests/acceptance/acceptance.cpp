// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned here
// rather than taken from config defaults. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "condensate/cli/config.hpp"
#include "condensate/cli/report.hpp"
#include "condensate/cli/runner.hpp"
#include "condensate/potentials.hpp"
#include "condensate/scattering.hpp"
#include "condensate/transform.hpp"

using namespace condensate;

namespace {

struct Item {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  bool upper = true;  // value <= bound, otherwise value >= bound
  bool ok() const { return upper ? value <= bound : value >= bound; }
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<std::vector<Item>()> body;
};

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

cli::Report run_config(const std::string& name) {
  const auto path = std::filesystem::path(CONDENSATE_SOURCE_DIR) / "configs" / name;
  return cli::run(cli::load_config(path.string()));
}

double check_value(const cli::Report& r, const std::string& anchor) {
  for (const auto& c : r.checks) {
    if (c.anchor == anchor) return c.value;
  }
  throw std::runtime_error("report for " + r.task + " has no check " + anchor);
}

double result(const cli::Report& r, const std::string& key) { return r.results.at(key).get<double>(); }

const Potential soft_sphere = Potential::soft_sphere(2.0, 1.0);
const Potential gaussian = Potential::gaussian(1.0, 1.0);

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;

  out.push_back({"soft-sphere scattering length equals 1 - tanh 1", 1.0, [] {
                   const double a0 = solve_zero_energy(soft_sphere).a0_asym;
                   return std::vector<Item>{{"rel err", relative(a0, 1.0 - std::tanh(1.0)), 1e-8}};
                 }});

  out.push_back({"integral and asymptotic scattering lengths agree", 2.0, [] {
                   std::vector<Item> items;
                   for (const auto& [label, v] : {std::pair{"soft-sphere", soft_sphere}, std::pair{"gaussian", gaussian}}) {
                     const auto sol = solve_zero_energy(v);
                     items.push_back({label, relative(sol.a0_int, sol.a0_asym), 1e-6});
                   }
                   return items;
                 }});

  out.push_back({"int V f equals 8 pi a0", 1.0, [] {
                   const auto s = zero_energy_state_integral(soft_sphere);
                   return std::vector<Item>{{"|int V f - 8 pi a0|", std::abs(s.integral - s.eight_pi_a0), 1e-6 * s.eight_pi_a0}};
                 }});

  out.push_back({"scattering length scales as 1/N", 5.0, [] {
                   const double a0 = solve_zero_energy(soft_sphere).a0_asym;
                   std::vector<Item> items;
                   for (int n : {1, 10, 100}) {
                     const double an = solve_zero_energy(scale(soft_sphere, n)).a0_asym;
                     items.push_back({"N=" + std::to_string(n), relative(an * n, a0), 1e-8});
                   }
                   return items;
                 }});

  out.push_back({"wave operator round trip and dilation covariance", 30.0, [] {
                   const auto t = build_transform(gaussian);
                   const auto g = radial_gaussian(t.grid(), 1.0);
                   const double norm = t.grid().norm(g);
                   const auto wg = apply_wave_operator(t, g);
                   const auto back = apply_wave_operator(t, wg, true);
                   std::vector<Item> items{{"round trip", l2_distance(t.grid(), back, g) / norm, 1e-5}};
                   for (int n : {2, 4}) {
                     TransformSpec s = t.spec();
                     s.k_max *= n;
                     s.r_max /= n;
                     s.h /= n;
                     const auto tn = build_transform(scale(gaussian, n), s);
                     const auto gn = dilate(t.grid(), g, n, tn.grid());
                     const auto lhs = apply_wave_operator(tn, gn);
                     const auto rhs = dilate(t.grid(), wg, n, tn.grid());
                     items.push_back({"dilation N=" + std::to_string(n), l2_distance(tn.grid(), lhs, rhs) / tn.grid().norm(gn), 1e-5});
                   }
                   return items;
                 }});

  out.push_back({"wave operator defect decreases in N", 300.0, [] {
                   const auto r = run_config("two-body-convergence.json");
                   return std::vector<Item>{
                       {"strictly decreasing", check_value(r, "wave-operator.defect-decreasing"), 1.0, false},
                       {"slope", check_value(r, "wave-operator.defect-rate"), -1.0 / 6.0 + 0.05}};
                 }});

  out.push_back({"second moment inequality at N = 2", 120.0, [] {
                   const auto r = run_config("second-moment.json");
                   return std::vector<Item>{{"states", static_cast<double>(r.results.at("rows").size()), 10.0, false},
                                            {"min slack/|lhs|", check_value(r, "second-moment.slack"), -1e-6, false}};
                 }});

  out.push_back({"GP solver conservation, dispersion and time order", 360.0, [] {
                   const auto pw = run_config("evolve-plane-wave.json");
                   const auto one = run_config("evolve.json");
                   const auto three = run_config("evolve-3d.json");
                   return std::vector<Item>{
                       {"mass d=1", check_value(one, "gp.mass-conservation"), 1e-10},
                       {"energy d=1", check_value(one, "gp.energy-conservation"), 1e-8},
                       {"|slope-2| d=1", check_value(one, "gp.time-order"), 0.1},
                       {"phase", check_value(pw, "gp.plane-wave-dispersion"), 1e-6},
                       {"mass d=3", check_value(three, "gp.mass-conservation"), 1e-10},
                       {"energy d=3", check_value(three, "gp.energy-conservation"), 1e-8},
                       {"|slope-2| d=3", check_value(three, "gp.time-order"), 0.1}};
                 }});

  out.push_back({"harmonic ground state energy equals d", 120.0, [] {
                   std::vector<Item> items;
                   for (const auto& [d, file] : {std::pair{1, "groundstate.json"}, std::pair{3, "groundstate-3d.json"}}) {
                     const auto r = run_config(file);
                     const std::string tag = "d=" + std::to_string(d);
                     items.push_back({"|E-d| " + tag, std::abs(result(r, "energy") - d), 1e-4});
                     items.push_back({"rise " + tag, check_value(r, "ground-state.monotone-descent"), 0.0});
                   }
                   return items;
                 }});

  out.push_back({"hierarchy residuals for the GP trajectory", 120.0, [] {
                   const auto r = run_config("hierarchy-check.json");
                   return std::vector<Item>{
                       {"differential slope", check_value(r, "hierarchy.differential-order"), 1.9, false},
                       {"integral slope", check_value(r, "hierarchy.integral-order"), 1.9, false},
                       {"wrong/matched", check_value(r, "hierarchy.wrong-coupling-separation"), 10.0, false},
                       {"g=0 integral", check_value(r, "hierarchy.zero-coupling-integral"), 1e-8}};
                 }});

  out.push_back({"two-body kernel integral calibration", 30.0, [] {
                   const auto r = run_config("inequality-int1.json");
                   return std::vector<Item>{{"rel err at 0", check_value(r, "kernel.origin-value"), 1e-4},
                                            {"sup/origin - 1", check_value(r, "kernel.sup-at-origin"), 1e-5}};
                 }});

  out.push_back({"pair interaction bound and contact limit", 120.0, [] {
                   const auto vl1 = run_config("inequality-vl1.json");
                   const auto vl12 = run_config("inequality-vl12.json");
                   return std::vector<Item>{
                       {"sup change 100->200", check_value(vl1, "pair-bound.stability"), 0.1},
                       {"nonincreasing", check_value(vl12, "contact-limit.nonincreasing"), 1.0, false},
                       {"gap/envelope", check_value(vl12, "contact-limit.envelope"), 1.0 + 1e-12}};
                 }});

  out.push_back({"cutoff function inequalities", 60.0, [] {
                   const auto r = run_config("inequality-theta.json");
                   return std::vector<Item>{
                       {"samples", result(r, "samples"), 1000.0, false},
                       {"monotonicity violations", check_value(r, "cutoff.monotonicity"), 0.0},
                       {"ratio ii change", check_value(r, "cutoff.ratio-ii-stability"), 0.1},
                       {"ratio iii change", check_value(r, "cutoff.ratio-iii-stability"), 0.1},
                       {"gradient fd", check_value(r, "cutoff.gradient-finite-difference"), 1e-6}};
                 }});

  return out;
}

}  // namespace

int main() {
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria()) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool ok = true;
    try {
      const auto items = c.body();
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        ok = ok && it.ok();
        detail << (i ? "; " : "") << it.label << "=" << it.value << (it.upper ? " <= " : " >= ") << it.bound
               << (it.ok() ? "" : " (violated)");
      }
    } catch (const std::exception& e) {
      ok = false;
      detail << "error: " << e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.budget_s;
    ok = ok && in_time;
    if (!ok) ++failures;
    std::printf("%s %2d %-50s %s; time=%.2fs < %gs%s\n", ok ? "PASS" : "FAIL", index, c.name.c_str(), detail.str().c_str(),
                elapsed, c.budget_s, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
