#include "condensate/scattering.hpp"

#include <cmath>
#include <string>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

constexpr double kEightPi = 8.0 * M_PI;

void require_integrable(const Potential& p) {
  if (p.sigma() <= 3.0) {
    fail(ErrorKind::divergent_norm, "decay exponent sigma=" + std::to_string(p.sigma()) + " <= 3");
  }
}

RadialGrid zero_energy_grid(const Potential& p, const GridSpec& spec) {
  const double range = p.range();
  const double h = spec.h > 0.0 ? spec.h : range / spec.points_per_range;
  double r_max = spec.r_max;
  if (!(r_max > 0.0)) r_max = std::max(50.0 * range, 50.0 * born_upper_bound(p));
  const auto bps = p.breakpoints();
  return RadialGrid::build(r_max, h, bps);
}

// Remainder of int_R^inf V(r) r^m dr for a power tail V = V(R) (R/r)^sigma.
double power_tail_moment(const Potential& p, double r_end, int m) {
  if (std::isfinite(p.support_radius()) || r_end >= std::numeric_limits<double>::max()) return 0.0;
  const double v_end = p(r_end);
  if (v_end == 0.0) return 0.0;
  return v_end * std::pow(r_end, m + 1.0) / (p.sigma() - m - 1.0);
}

double ode_residual(const RadialGrid& g, const std::vector<double>& u, const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (g.is_break_node(i) || g.is_break_node(i - 1) || g.is_break_node(i + 1)) continue;
    const double hl = g[i] - g[i - 1];
    const double hr = g[i + 1] - g[i];
    if (std::abs(hl - hr) > 1e-9 * hr) continue;
    const double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (hl * hr);
    worst = std::max(worst, std::abs(d2 - 0.5 * v[i] * u[i]));
  }
  return worst;
}

}  // namespace

double born_upper_bound(const Potential& p) {
  if (p.is_zero()) return 0.0;
  return norms(p).l1 / kEightPi;
}

ZeroEnergySolution solve_zero_energy(const Potential& p, const GridSpec& spec) {
  require_integrable(p);
  ZeroEnergySolution sol;
  sol.grid = zero_energy_grid(p, spec);
  const auto& g = sol.grid;
  const std::size_t n = g.size();
  sol.u.assign(n, 0.0);
  sol.du.assign(n, 0.0);
  sol.du[0] = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = g[i];
    const double b = g[i + 1];
    const double h = b - a;
    const double va = 0.5 * potential_inside(p, a, a, b);
    const double vm = 0.5 * p(0.5 * (a + b));
    const double vb = 0.5 * potential_inside(p, b, a, b);
    const double u = sol.u[i];
    const double w = sol.du[i];
    const double k1u = w, k1w = va * u;
    const double k2u = w + 0.5 * h * k1w, k2w = vm * (u + 0.5 * h * k1u);
    const double k3u = w + 0.5 * h * k2w, k3w = vm * (u + 0.5 * h * k2u);
    const double k4u = w + h * k3w, k4w = vb * (u + h * k3u);
    sol.u[i + 1] = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    sol.du[i + 1] = w + h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
  }

  const double r_max = g.r_max();
  sol.fit_lo = 0.6 * r_max;
  sol.fit_hi = 0.9 * r_max;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] >= sol.fit_lo && g[i] <= sol.fit_hi) {
      xs.push_back(g[i]);
      ys.push_back(sol.u[i]);
    }
  }
  const LineFit fit = fit_line(xs, ys);
  if (!(fit.slope > 0.0) || !std::isfinite(fit.slope)) {
    fail(ErrorKind::asymptotic_regime, "zero-energy solution has non-positive asymptotic slope");
  }
  sol.fit_nonlinearity = fit.max_residual / (fit.slope * (sol.fit_hi - sol.fit_lo));
  if (sol.fit_nonlinearity > spec.fit_tol) {
    fail(ErrorKind::asymptotic_regime, "affine fit deviates by " + std::to_string(sol.fit_nonlinearity) +
                                           " (relative) on [" + std::to_string(sol.fit_lo) + ", " +
                                           std::to_string(sol.fit_hi) + "]");
  }
  sol.a0_asym = -fit.intercept / fit.slope + 0.0;  // no negative zero for V = 0
  for (std::size_t i = 0; i < n; ++i) {
    sol.u[i] /= fit.slope;
    sol.du[i] /= fit.slope;
  }
  const auto v = sample_potential(p, g);
  sol.residual = ode_residual(g, sol.u, v);
  sol.a0_int = scattering_length_integral(sol, p);
  sol.consistency_gap = std::abs(sol.a0_int - sol.a0_asym);
  return sol;
}

double scattering_length_integral(const ZeroEnergySolution& sol, const Potential& p) {
  const auto& g = sol.grid;
  if (sol.u.size() != g.size()) fail(ErrorKind::grid_mismatch, "solution does not match its grid");
  const auto v = sample_potential(p, g);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = v[i] * sol.u[i] * g[i];
  const double r_end = g.r_max();
  // Far out u = r - a0, so the tail contributes int V (r - a0) r dr.
  const double tail = power_tail_moment(p, r_end, 2) - sol.a0_asym * power_tail_moment(p, r_end, 1);
  const double value = 0.5 * (g.integrate(f) + tail);
  if (!std::isfinite(value)) fail(ErrorKind::quadrature, "scattering-length integral diverged");
  return value;
}

PhaseShift phase_shift(const Potential& p, double k, const GridSpec& spec) {
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::invalid_argument, "phase shift needs k > 0");
  require_integrable(p);
  PhaseShift out{k, 0.0};
  if (p.is_zero()) return out;
  double r_end = p.support_radius();
  if (!std::isfinite(r_end)) r_end = p.range() * std::pow(1e16, 1.0 / p.sigma());
  const double h_range = spec.h > 0.0 ? spec.h : p.range() / spec.points_per_range;
  const double h = std::min(h_range, 0.05 / k);
  const auto bps = p.breakpoints();
  const RadialGrid g = RadialGrid::build(r_end, h, bps);
  auto rhs = [k](double r, double v, double d) {
    const double s = std::sin(k * r + d);
    return -0.5 * v * s * s / k;
  };
  double d = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = g[i];
    const double b = g[i + 1];
    const double hh = b - a;
    const double m = 0.5 * (a + b);
    const double va = potential_inside(p, a, a, b);
    const double vm = p(m);
    const double vb = potential_inside(p, b, a, b);
    const double k1 = rhs(a, va, d);
    const double k2 = rhs(m, vm, d + 0.5 * hh * k1);
    const double k3 = rhs(m, vm, d + 0.5 * hh * k2);
    const double k4 = rhs(b, vb, d + hh * k3);
    d += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  out.delta0 = d;
  return out;
}

double scattering_length_from_phase(const Potential& p, double k, const GridSpec& spec) {
  const double a1 = -phase_shift(p, k, spec).delta0 / k;
  const double a2 = -phase_shift(p, 2.0 * k, spec).delta0 / (2.0 * k);
  return (4.0 * a1 - a2) / 3.0;
}

StateIntegral zero_energy_state_integral(const Potential& p, const GridSpec& spec) {
  return zero_energy_state_integral(solve_zero_energy(p, spec), p);
}

StateIntegral zero_energy_state_integral(const ZeroEnergySolution& sol, const Potential& p) {
  StateIntegral out;
  out.eight_pi_a0 = kEightPi * sol.a0_asym;
  if (p.is_zero()) return out;
  const auto ref = gauss_legendre_panels(0.0, 1.0, 1);
  const auto& g = sol.grid;
  const double support = p.support_radius();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < g.size() && g[i] < support; ++i) {
    const double a = g[i];
    const double h = g[i + 1] - a;
    const double u0 = sol.u[i], u1 = sol.u[i + 1];
    const double d0 = sol.du[i] * h, d1 = sol.du[i + 1] * h;
    double cell = 0.0;
    for (std::size_t q = 0; q < ref.nodes.size(); ++q) {
      const double t = ref.nodes[q];
      const double t2 = t * t, t3 = t2 * t;
      const double hu = (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * d1;
      const double r = a + t * h;
      cell += ref.weights[q] * p(r) * hu * r;
    }
    sum += cell * h;
  }
  const double r_end = g.r_max();
  sum += power_tail_moment(p, r_end, 2) - sol.a0_asym * power_tail_moment(p, r_end, 1);
  out.integral = 4.0 * M_PI * sum;
  out.relative_gap = out.eight_pi_a0 != 0.0 ? std::abs(out.integral - out.eight_pi_a0) / std::abs(out.eight_pi_a0)
                                            : std::abs(out.integral);
  return out;
}

}  // namespace condensate
