#include "condensate/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>
#include <random>

#include "condensate/cutoff.hpp"
#include "condensate/error.hpp"
#include "condensate/gp.hpp"
#include "condensate/hierarchy.hpp"
#include "condensate/kernel_integrals.hpp"
#include "condensate/pair_bounds.hpp"
#include "condensate/potentials.hpp"
#include "condensate/propagators.hpp"
#include "condensate/quadrature.hpp"
#include "condensate/random.hpp"
#include "condensate/scattering.hpp"
#include "condensate/second_moment.hpp"

namespace condensate::cli {

namespace {

using ordered = nlohmann::ordered_json;

double relative(double value, double reference) {
  if (reference == 0.0) return std::abs(value);
  return std::abs(value) / std::abs(reference);
}

int auto_points(int points, int dim) {
  if (points > 0) return points;
  return dim == 1 ? 128 : dim == 2 ? 64 : 32;
}

Field make_field(int dim, int points, double box) {
  return Field(std::vector<int>(dim, points), std::vector<double>(dim, box));
}

void fill_gaussian(Field& f, double width, double momentum) {
  f.fill([&](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::polar(std::exp(-r2 / (2.0 * width * width)), momentum * x[0]);
  });
  f.normalize();
}

// |phi|^2 along the first axis through the centre of the box.
Table density_slice(const Field& f, const std::string& name) {
  Table t{name, {"x", "density"}, {}};
  const auto& shape = f.shape();
  std::size_t stride = 1;
  for (int a = 1; a < f.dim(); ++a) stride *= static_cast<std::size_t>(shape[a]);
  std::size_t offset = 0;
  std::size_t s = 1;
  for (int a = f.dim() - 1; a >= 1; --a) {
    offset += static_cast<std::size_t>(shape[a] / 2) * s;
    s *= static_cast<std::size_t>(shape[a]);
  }
  std::vector<double> x(f.dim());
  for (int i = 0; i < shape[0]; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i) * stride + offset;
    f.position(idx, x);
    t.rows.push_back({x[0], std::norm(f[idx])});
  }
  return t;
}

double field_distance(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s * a.cell_volume());
}

// ---------------------------------------------------------------- scatter

Report run_scatter(const ScatterParams& p) {
  Report rep;
  const Potential base = make_potential(p.potential);
  const Potential v = scale(base, p.scale);
  GridSpec spec;
  spec.points_per_range = p.points_per_range;
  spec.r_max = p.r_max;
  spec.fit_tol = p.fit_tol;
  const auto sol = solve_zero_energy(v, spec);
  const auto state = zero_energy_state_integral(sol, v);
  const double born = born_upper_bound(v);
  const double a0 = sol.a0_asym;
  const double consistency = relative(sol.a0_int - a0, a0);

  auto& r = rep.results;
  r["family"] = p.potential.family;
  r["scale"] = p.scale;
  r["a0_asym"] = a0;
  r["a0_int"] = sol.a0_int;
  r["born_upper_bound"] = born;
  r["consistency_gap"] = consistency;
  r["eight_pi_a0_identity_gap"] = state.relative_gap;
  r["state_integral"] = state.integral;
  r["a0_times_scale"] = a0 * p.scale;
  r["fit_window"] = {sol.fit_lo, sol.fit_hi};
  r["fit_nonlinearity"] = sol.fit_nonlinearity;
  r["ode_residual"] = sol.residual;

  rep.check_at_most("scattering-length.consistency", consistency, p.tolerance);
  rep.check_at_most("scattering-length.state-identity", state.relative_gap, p.tolerance);
  rep.check_at_most("scattering-length.born-bound", born > 0.0 ? a0 / born : 0.0, 1.0);
  if (p.potential.family == "soft-sphere") {
    // u'' = (v0 / 2) u inside the sphere: a0 = R - tanh(kappa R) / kappa.
    const double kappa = std::sqrt(0.5 * base.amplitude());
    const double radius = base.length();
    const double exact = (radius - std::tanh(kappa * radius) / kappa) / p.scale;
    r["a0_closed_form"] = exact;
    rep.check_at_most("scattering-length.closed-form", relative(a0 - exact, exact), p.closed_form_tol);
  }

  Table t{"state", {"r", "f"}, {}};
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double x = sol.grid[i];
    t.rows.push_back({x, x > 0.0 ? sol.u[i] / x : sol.du[i]});
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

// ---------------------------------------------------------------- evolve

Field initial_field(const EvolveParams& p, int points) {
  Field f = make_field(p.dimension, points, p.box);
  if (p.initial.kind == "plane-wave") {
    const double k = 2.0 * M_PI * p.initial.mode / p.box;
    const double a = p.initial.amplitude;
    f.fill([&](std::span<const double> x) { return std::polar(a, k * x[0]); });
  } else {
    fill_gaussian(f, p.initial.width, p.initial.momentum);
  }
  return f;
}

GPConfig gp_config(double coupling, double trap_strength, double dt) {
  GPConfig c;
  c.coupling = coupling;
  if (trap_strength > 0.0) c.trap = harmonic_trap(trap_strength);
  c.dt = dt;
  return c;
}

Report run_evolve(const EvolveParams& p) {
  Report rep;
  const int points = auto_points(p.points, p.dimension);
  const GPConfig config = gp_config(p.coupling, p.trap_strength, p.dt);
  Field f = initial_field(p, points);
  const GPSolver solver(f, config);
  const auto steps = static_cast<long>(std::llround(p.t_end / p.dt));
  if (steps < 1 || std::abs(steps * p.dt - p.t_end) > 1e-9 * p.t_end) {
    fail(ErrorKind::step_size, "t_end must be a positive multiple of dt");
  }

  Table series{"series", {"t", "mass", "kinetic", "interaction", "trap", "energy"}, {}};
  auto record = [&]() {
    const auto e = solver.energy(f);
    series.rows.push_back({f.time, f.mass(), e.kinetic, e.interaction, e.trap, e.total});
  };
  const double m0 = f.mass();
  const double e0 = solver.energy(f).total;
  double energy_drift = 0.0;
  record();
  for (long done = 0; done < steps;) {
    const long chunk = std::min<long>(p.record_every, steps - done);
    solver.evolve(f, static_cast<double>(chunk) * p.dt);
    done += chunk;
    record();
    energy_drift = std::max(energy_drift, relative(series.rows.back()[5] - e0, e0));
  }
  const double mass_drift = relative(f.mass() - m0, m0) / p.t_end;

  auto& r = rep.results;
  r["dimension"] = p.dimension;
  r["points"] = points;
  r["steps"] = steps;
  r["mass_initial"] = m0;
  r["energy_initial"] = e0;
  r["mass_drift_per_time"] = mass_drift;
  r["energy_drift"] = energy_drift;
  r["top_octave_fraction"] = solver.top_octave_fraction(f);
  rep.check_at_most("gp.mass-conservation", mass_drift, p.mass_tol);
  rep.check_at_most("gp.energy-conservation", energy_drift, p.energy_tol);

  if (p.initial.kind == "plane-wave") {
    const double k = 2.0 * M_PI * p.initial.mode / p.box;
    const double a = p.initial.amplitude;
    const double omega = k * k + p.coupling * a * a;
    double err = 0.0;
    std::vector<double> x(p.dimension);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.position(i, x);
      err = std::max(err, std::abs(f[i] - std::polar(a, k * x[0] - omega * f.time)));
    }
    r["omega"] = omega;
    r["phase_error"] = err / a;
    rep.check_at_most("gp.plane-wave-dispersion", err / a, p.phase_tol);
  }

  if (!p.refinement_dts.empty()) {
    const double finest = *std::min_element(p.refinement_dts.begin(), p.refinement_dts.end());
    Field ref = gp_evolve(initial_field(p, points), gp_config(p.coupling, p.trap_strength, finest / 8.0), p.t_end);
    Table t{"refinement", {"dt", "error"}, {}};
    std::vector<double> dts, errs;
    for (double dt : p.refinement_dts) {
      const Field g = gp_evolve(initial_field(p, points), gp_config(p.coupling, p.trap_strength, dt), p.t_end);
      const double e = field_distance(g, ref) / std::sqrt(ref.mass());
      dts.push_back(dt);
      errs.push_back(e);
      t.rows.push_back({dt, e});
    }
    const double slope = loglog_slope(dts, errs);
    r["refinement_slope"] = slope;
    rep.check_at_most("gp.time-order", std::abs(slope - 2.0), p.order_tol);
    rep.tables.push_back(std::move(t));
  }

  rep.tables.push_back(std::move(series));
  rep.tables.push_back(density_slice(f, "density"));
  return rep;
}

// ---------------------------------------------------------------- groundstate

Report run_groundstate(const GroundStateParams& p) {
  Report rep;
  const int points = auto_points(p.points, p.dimension);
  Field init = make_field(p.dimension, points, p.box);
  // A wider start than the trap's ground state, so the descent has work to do.
  fill_gaussian(init, 1.5, 0.0);
  GroundStateOptions opt;
  opt.dt_schedule = {p.dt};
  opt.tol = p.tol;
  opt.max_iterations = static_cast<std::size_t>(p.max_iterations);
  const auto gs = gp_ground_state(gp_config(p.coupling, p.trap_strength, p.dt), init, opt);

  auto& r = rep.results;
  r["dimension"] = p.dimension;
  r["points"] = points;
  r["energy"] = gs.energy;
  r["iterations"] = gs.iterations;
  r["monotone"] = gs.monotone;
  r["largest_rise"] = gs.largest_rise;
  rep.check_at_most("ground-state.monotone-descent", gs.monotone ? 0.0 : gs.largest_rise, 0.0);
  if (p.coupling == 0.0 && p.trap_strength > 0.0) {
    const double exact = p.dimension * std::sqrt(p.trap_strength);
    r["energy_exact"] = exact;
    rep.check_at_most("ground-state.harmonic-energy", std::abs(gs.energy - exact), p.energy_tol);
  }
  Table t{"energies", {"iteration", "energy"}, {}};
  for (std::size_t i = 0; i < gs.energies.size(); ++i) t.rows.push_back({static_cast<double>(i), gs.energies[i]});
  rep.tables.push_back(std::move(t));
  rep.tables.push_back(density_slice(gs.field, "density"));
  return rep;
}

// ---------------------------------------------------------------- two-body-convergence

Report run_two_body(const TwoBodyParams& p) {
  Report rep;
  DefectSpec spec;
  spec.packet_width = p.packet_width;
  spec.r_max = p.r_max;
  spec.h = p.h;
  spec.points_per_range = p.points_per_range;
  spec.dt = p.dt;
  spec.times = p.times;
  const auto curve = convergence_experiment(make_potential(p.potential), p.n_values, spec);

  Table t{"defect", {"N", "defect", "h1_norm", "spacing", "boundary_mass", "energy_drift", "norm_drift"}, {}};
  for (double time : p.times) t.columns.push_back("defect_t" + std::to_string(time).substr(0, 6));
  auto rows = ordered::array();
  for (const auto& s : curve.samples) {
    std::vector<double> row{static_cast<double>(s.n), s.defect, s.h1_norm, s.spacing, s.boundary_mass,
                            s.energy_drift, s.norm_drift};
    row.insert(row.end(), s.per_time.begin(), s.per_time.end());
    t.rows.push_back(row);
    ordered item;
    item["N"] = s.n;
    item["defect"] = s.defect;
    item["h1_norm"] = s.h1_norm;
    item["per_time"] = s.per_time;
    rows.push_back(item);
  }
  auto& r = rep.results;
  r["rows"] = rows;
  r["slope"] = curve.fitted_slope;
  r["strictly_decreasing"] = curve.strictly_decreasing;
  r["exact"] = curve.exact;
  if (curve.exact) {
    rep.check_at_most("wave-operator.zero-potential-defect", curve.samples.front().defect, 0.0);
  } else {
    rep.check_at_least("wave-operator.defect-decreasing", curve.strictly_decreasing ? 1.0 : 0.0, 1.0);
    rep.check_at_most("wave-operator.defect-rate", curve.fitted_slope, p.slope_max);
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

// ---------------------------------------------------------------- second-moment

SeparableState sample_separable_state(const SecondMomentParams& p, std::uint64_t seed, std::uint64_t index) {
  auto rng = sample_stream(seed, index);
  std::uniform_real_distribution<double> width(p.width_min, p.width_max);
  std::uniform_real_distribution<double> centre(-p.center_range, p.center_range);
  std::uniform_real_distribution<double> momentum(-p.momentum_range, p.momentum_range);
  SeparableState s;
  for (auto& c : s.chi) {
    c.width = width(rng);
    c.center = centre(rng);
    c.momentum = momentum(rng);
  }
  s.g_width = width(rng);
  return s;
}

Report run_second_moment(const SecondMomentParams& p, std::uint64_t seed) {
  Report rep;
  const auto transform = second_moment_transform(make_potential(p.potential), p.width_min, p.completeness_tol);
  Table t{"states", {"state", "lhs", "rhs", "slack", "dropped_terms", "intertwining_gap"}, {}};
  auto rows = ordered::array();
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.states; ++i) {
    const auto res = second_moment_check(sample_separable_state(p, seed, static_cast<std::uint64_t>(i)), transform);
    t.rows.push_back({static_cast<double>(i), res.lhs, res.rhs, res.slack, res.dropped_terms, res.intertwining_gap});
    ordered item;
    item["lhs"] = res.lhs;
    item["rhs"] = res.rhs;
    item["slack"] = res.slack;
    item["N"] = 2;
    rows.push_back(item);
    worst = std::min(worst, res.slack / std::abs(res.lhs));
  }
  auto& r = rep.results;
  r["rows"] = rows;
  r["completeness_defect"] = transform.completeness_defect();
  r["min_relative_slack"] = worst;
  rep.check_at_least("second-moment.slack", worst, -p.slack_tol);
  rep.tables.push_back(std::move(t));
  return rep;
}

// ---------------------------------------------------------------- hierarchy-check

Report run_hierarchy(const HierarchyParams& p) {
  Report rep;
  auto initial = [&](int points) {
    Field f = make_field(1, points, p.box);
    fill_gaussian(f, p.width, p.momentum);
    return f;
  };
  Table ladder{"ladder", {"dt", "points", "differential", "wrong_coupling", "integral", "quadrature_error"}, {}};
  std::vector<double> diff, integ, wrong;
  HierarchyResidual finest;
  for (std::size_t l = 0; l < p.dts.size(); ++l) {
    GPConfig config;
    config.coupling = p.coupling;
    config.dt = p.dts[l];
    const auto traj = gp_trajectory(initial(p.points[l]), config, p.t_end);
    finest = hierarchy_residual(traj, p.coupling);
    const auto bad = hierarchy_residual(traj, p.wrong_factor * p.coupling);
    const auto in = integral_form_residual(traj, p.coupling);
    diff.push_back(finest.max_differential);
    wrong.push_back(bad.max_differential);
    integ.push_back(in.integral_residual);
    ladder.rows.push_back({p.dts[l], static_cast<double>(p.points[l]), finest.max_differential, bad.max_differential,
                           in.integral_residual, in.quadrature_error});
  }
  const double diff_order = loglog_slope(p.dts, diff);
  const double integ_order = loglog_slope(p.dts, integ);

  GPConfig free;
  free.coupling = 0.0;
  free.dt = p.dts.front();
  const auto free_traj = gp_trajectory(initial(p.points.front()), free, p.t_end);
  const double free_residual = integral_form_residual(free_traj, 0.0).integral_residual;

  auto& r = rep.results;
  r["differential_order"] = diff_order;
  r["integral_order"] = integ_order;
  r["finest_differential"] = diff.back();
  r["finest_integral"] = integ.back();
  r["finest_wrong_coupling"] = wrong.back();
  r["zero_coupling_integral"] = free_residual;
  auto rows = ordered::array();
  for (std::size_t i = 0; i < finest.times.size(); ++i) {
    rows.push_back({{"t", finest.times[i]}, {"differential_residual", finest.differential_residual[i]}});
  }
  r["rows"] = rows;
  rep.check_at_least("hierarchy.differential-order", diff_order, p.order_min);
  rep.check_at_least("hierarchy.integral-order", integ_order, p.order_min);
  // With g = 0 the wrong coupling is the right one, so the separation check is skipped.
  if (p.coupling != 0.0) {
    rep.check_at_least("hierarchy.wrong-coupling-separation", wrong.back() / diff.back(), p.separation);
  }
  rep.check_at_most("hierarchy.zero-coupling-integral", free_residual, p.free_tol);

  Table series{"residual", {"t", "differential_residual"}, {}};
  for (std::size_t i = 0; i < finest.times.size(); ++i) series.rows.push_back({finest.times[i], finest.differential_residual[i]});
  rep.tables.push_back(std::move(ladder));
  rep.tables.push_back(std::move(series));
  return rep;
}

// ---------------------------------------------------------------- inequality-check

void run_kernel(const InequalityParams& p, Report& rep) {
  const auto kind = p.kind == "int1" ? KernelKind::two_body_form : KernelKind::half_power_resolvent;
  const double origin = kernel_integral(kind, {0.0, 0.0, 0.0});
  const double exact = kernel_integral_at_origin(kind);
  Table t{"kernel", {"p", "value"}, {}};
  double sup = origin;
  for (double pv : p.p_values) {
    const double v = kernel_integral(kind, {0.0, 0.0, pv});
    sup = std::max(sup, v);
    t.rows.push_back({pv, v});
  }
  auto& r = rep.results;
  r["kind"] = p.kind;
  r["origin_value"] = origin;
  r["origin_exact"] = exact;
  r["sup"] = sup;
  r["samples"] = p.p_values.size();
  rep.check_at_most("kernel.origin-value", relative(origin - exact, exact), p.tolerance);
  // The quadrature targets 1e-5 relative accuracy, so "attained at p = 0" is judged at that level.
  rep.check_at_most("kernel.sup-at-origin", (sup - origin) / origin, 1e-5);
  rep.tables.push_back(std::move(t));
}

void run_vl1(const InequalityParams& p, std::uint64_t seed, Report& rep) {
  const Potential v = make_potential(p.potential);
  const auto refine = static_cast<std::size_t>(p.refine);
  const auto once = pair_interaction_bound(v, static_cast<std::size_t>(p.samples), seed, {}, refine);
  const auto twice = pair_interaction_bound(v, 2 * static_cast<std::size_t>(p.samples), seed, {}, refine);
  const double change = once.ratio_sup == 0.0 ? relative(twice.ratio_sup, 1.0)
                                              : std::abs(twice.ratio_sup / once.ratio_sup - 1.0);
  auto& r = rep.results;
  r["kind"] = p.kind;
  r["constant"] = once.constant;
  r["ratio_sup"] = once.ratio_sup;
  r["ratio_sup_doubled"] = twice.ratio_sup;
  r["sampled_ratio_sup"] = once.sampled_ratio_sup;
  r["sampled_ratio_sup_doubled"] = twice.sampled_ratio_sup;
  r["structured_ratio_sup"] = once.structured_ratio_sup;
  r["samples"] = p.samples;
  r["samples_doubled"] = 2 * p.samples;
  rep.check_at_most("pair-bound.constant", twice.ratio_sup, once.constant);
  rep.check_at_most("pair-bound.stability", change, p.stability_tol);
  Table t{"ratios", {"sample", "ratio"}, {}};
  for (std::size_t i = 0; i < twice.ratios.size(); ++i) t.rows.push_back({static_cast<double>(i), twice.ratios[i]});
  rep.tables.push_back(std::move(t));
}

void run_vl12(const InequalityParams& p, std::uint64_t seed, Report& rep) {
  const Potential v = make_potential(p.potential);
  std::vector<double> alphas = p.alphas;
  if (alphas.empty()) {
    for (int e = 1; e <= 10; ++e) alphas.push_back(std::ldexp(1.0, -e));
  }
  auto [phi, psi] = reference_pair_states();
  if (p.pair == "random") {
    phi = sample_pair_state(seed, 0, {});
    psi = sample_pair_state(seed, 1, {});
  }
  const auto gap = contact_limit_gap(v, phi, psi, alphas);
  const double small = contact_limit_gap(v, phi, psi, {p.small_alpha}).gaps.front();
  auto& r = rep.results;
  r["kind"] = p.kind;
  r["contact_pairing"] = std::abs(contact_matrix_element(phi, psi));
  r["fitted_constant"] = gap.fitted_constant;
  r["envelope_exponent"] = gap.envelope_exponent;
  r["small_alpha"] = p.small_alpha;
  r["small_alpha_gap"] = small;
  r["samples"] = alphas.size();
  rep.check_at_least("contact-limit.nonincreasing", gap.nonincreasing ? 1.0 : 0.0, 1.0);
  double worst = 0.0;  // largest normalized gap over its envelope
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    worst = std::max(worst, gap.normalized_gaps[i] / (gap.fitted_constant * std::pow(alphas[i], gap.envelope_exponent)));
  }
  rep.check_at_most("contact-limit.envelope", worst, 1.0 + 1e-12);
  rep.check_at_most("contact-limit.small-alpha", small, p.small_alpha_tol);
  Table t{"gap", {"alpha", "gap", "normalized_gap", "envelope"}, {}};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    t.rows.push_back({alphas[i], gap.gaps[i], gap.normalized_gaps[i],
                      gap.fitted_constant * std::pow(alphas[i], gap.envelope_exponent)});
  }
  rep.tables.push_back(std::move(t));
}

void run_theta(const InequalityParams& p, std::uint64_t seed, Report& rep) {
  CutoffConfig cfg = default_cutoff_config(p.particles, p.k, p.n);
  if (p.ell > 0.0) cfg.ell = p.ell;
  cfg.epsilon = p.epsilon;
  const auto n1 = static_cast<std::size_t>(p.samples);
  const auto refine = static_cast<std::size_t>(p.refine);
  const auto once = theta_inequalities(cfg, n1, seed, refine);
  const auto twice = theta_inequalities(cfg, 2 * n1, seed, refine);

  // Central differences against the analytic gradient, relative to |grad Theta|.
  double fd_error = 0.0;
  for (int s = 0; s < p.fd_samples; ++s) {
    auto x = sample_configuration(cfg, seed, 2 * n1 + static_cast<std::size_t>(s));
    const auto v = theta_eval(cfg, x);
    const double scale_g = std::sqrt(v.grad_sq_sum);
    if (scale_g == 0.0) continue;
    const double h = 1e-5 * cfg.ell;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (int a = 0; a < 3; ++a) {
        const double saved = x[j][a];
        x[j][a] = saved + h;
        const double up = theta_eval(cfg, x).Theta;
        x[j][a] = saved - h;
        const double down = theta_eval(cfg, x).Theta;
        x[j][a] = saved;
        fd_error = std::max(fd_error, std::abs((up - down) / (2.0 * h) - v.grad[j][a]) / scale_g);
      }
    }
  }
  auto change = [](double a, double b) { return a == 0.0 ? std::abs(b) : std::abs(b / a - 1.0); };
  auto& r = rep.results;
  r["kind"] = p.kind;
  r["ell"] = cfg.ell;
  r["epsilon"] = cfg.epsilon;
  r["k"] = cfg.k;
  r["n"] = cfg.n;
  r["particles"] = cfg.particles;
  r["samples"] = n1;
  r["samples_doubled"] = 2 * n1;
  r["ratio_ii_sup"] = once.ratio_ii_sup;
  r["ratio_iii_sup"] = once.ratio_iii_sup;
  r["ratio_ii_sup_doubled"] = twice.ratio_ii_sup;
  r["ratio_iii_sup_doubled"] = twice.ratio_iii_sup;
  r["sampled_ratio_ii_sup"] = once.sampled_ratio_ii_sup;
  r["sampled_ratio_iii_sup"] = once.sampled_ratio_iii_sup;
  r["structured_ratio_ii_sup"] = once.structured_ratio_ii_sup;
  r["structured_ratio_iii_sup"] = once.structured_ratio_iii_sup;
  r["gradient_fd_error"] = fd_error;
  rep.check_at_most("cutoff.monotonicity",
                    static_cast<double>(once.monotonicity_violations + twice.monotonicity_violations), 0.0);
  rep.check_at_most("cutoff.ratio-ii-stability", change(once.ratio_ii_sup, twice.ratio_ii_sup), p.stability_tol);
  rep.check_at_most("cutoff.ratio-iii-stability", change(once.ratio_iii_sup, twice.ratio_iii_sup), p.stability_tol);
  rep.check_at_most("cutoff.gradient-finite-difference", fd_error, p.fd_tol);
}

Report run_inequality(const InequalityParams& p, std::uint64_t seed) {
  Report rep;
  if (p.kind == "int1" || p.kind == "trivv") run_kernel(p, rep);
  else if (p.kind == "vl1") run_vl1(p, seed, rep);
  else if (p.kind == "vl12") run_vl12(p, seed, rep);
  else run_theta(p, seed, rep);
  return rep;
}

}  // namespace

Report run(const RunConfig& cfg) {
  Report rep = std::visit(
      [&](const auto& p) -> Report {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ScatterParams>) return run_scatter(p);
        else if constexpr (std::is_same_v<T, EvolveParams>) return run_evolve(p);
        else if constexpr (std::is_same_v<T, GroundStateParams>) return run_groundstate(p);
        else if constexpr (std::is_same_v<T, TwoBodyParams>) return run_two_body(p);
        else if constexpr (std::is_same_v<T, SecondMomentParams>) return run_second_moment(p, cfg.seed);
        else if constexpr (std::is_same_v<T, HierarchyParams>) return run_hierarchy(p);
        else return run_inequality(p, cfg.seed);
      },
      cfg.params);
  rep.task = std::string(task_name(cfg.task));
  rep.config_hash = config_hash(cfg);
  return rep;
}

}  // namespace condensate::cli
