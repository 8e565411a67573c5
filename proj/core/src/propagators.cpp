#include "condensate/propagators.hpp"

#include <cmath>
#include <string>

#include "condensate/error.hpp"
#include "condensate/fft.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

void require_uniform(const RadialGrid& grid, std::size_t n, const char* what) {
  if (!grid.uniform()) fail(ErrorKind::grid_mismatch, std::string(what) + " needs a uniform grid");
  if (n != grid.size()) fail(ErrorKind::grid_mismatch, std::string(what) + ": wavepacket does not match grid");
  if (grid.size() < 4) fail(ErrorKind::invalid_argument, std::string(what) + ": grid too small");
}

void check_boundary(double fraction) {
  if (fraction > 1e-4) {
    fail(ErrorKind::boundary_contamination,
         "mass fraction " + std::to_string(fraction) + " in the outer 10% of the box; increase r_max");
  }
}

}  // namespace

double boundary_mass_fraction(const RadialGrid& grid, std::span<const std::complex<double>> u) {
  double outer = 0.0, total = 0.0;
  const double edge = 0.9 * grid.r_max();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = grid.weights()[i] * std::norm(u[i]);
    total += m;
    if (grid[i] >= edge) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

RadialWavepacket evolve_free(const RadialWavepacket& w, double t) {
  require_uniform(w.grid, w.u.size(), "free evolution");
  RadialWavepacket out = w;
  out.boundary_mass = boundary_mass_fraction(w.grid, w.u);
  check_boundary(out.boundary_mass);
  if (t == 0.0) return out;
  const int interior = static_cast<int>(w.grid.size()) - 2;
  SineTransform dst(interior);
  std::vector<double> re(static_cast<std::size_t>(interior)), im(static_cast<std::size_t>(interior));
  for (int i = 0; i < interior; ++i) {
    re[static_cast<std::size_t>(i)] = w.u[static_cast<std::size_t>(i) + 1].real();
    im[static_cast<std::size_t>(i)] = w.u[static_cast<std::size_t>(i) + 1].imag();
  }
  dst.forward(re);
  dst.forward(im);
  const double r_max = w.grid.r_max();
  for (int m = 0; m < interior; ++m) {
    const double k = M_PI * (m + 1) / r_max;
    const std::complex<double> c{re[static_cast<std::size_t>(m)], im[static_cast<std::size_t>(m)]};
    const std::complex<double> e = c * std::polar(1.0, -k * k * t);
    re[static_cast<std::size_t>(m)] = e.real();
    im[static_cast<std::size_t>(m)] = e.imag();
  }
  dst.inverse(re);
  dst.inverse(im);
  out.u.front() = 0.0;
  out.u.back() = 0.0;
  for (int i = 0; i < interior; ++i) {
    out.u[static_cast<std::size_t>(i) + 1] = {re[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i)]};
  }
  out.boundary_mass = boundary_mass_fraction(out.grid, out.u);
  check_boundary(out.boundary_mass);
  return out;
}

CrankNicolson::CrankNicolson(const RadialGrid& grid, std::span<const double> potential, double dt) : dt_(dt) {
  require_uniform(grid, potential.size(), "Crank-Nicolson");
  if (!(dt > 0.0)) fail(ErrorKind::invalid_argument, "time step must be > 0");
  const double h = grid[1] - grid[0];
  h2inv_ = 1.0 / (h * h);
  v_.assign(potential.begin(), potential.end());
  // Unknowns are the interior nodes 1..n-2; the tridiagonal system is
  // (1 + i dt/2 H) u^{+} = (1 - i dt/2 H) u with H = -D2 + V/2.
  const std::size_t m = grid.size() - 2;
  const std::complex<double> half{0.0, 0.5 * dt};
  off_ = -half * h2inv_;
  cprime_.resize(m);
  denom_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::complex<double> diag = 1.0 + half * (2.0 * h2inv_ + 0.5 * v_[i + 1]);
    const std::complex<double> d = i == 0 ? diag : diag - off_ * cprime_[i - 1];
    denom_[i] = 1.0 / d;
    cprime_[i] = off_ * denom_[i];
  }
}

void CrankNicolson::step(RadialFunction& u) const {
  const std::size_t m = cprime_.size();
  const std::complex<double> half{0.0, 0.5 * dt_};
  // Right-hand side (1 - i dt/2 H) u, forward sweep fused in.
  std::vector<std::complex<double>> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + 1;
    const std::complex<double> hu = (2.0 * u[j] - u[j - 1] - u[j + 1]) * h2inv_ + 0.5 * v_[j] * u[j];
    d[i] = u[j] - half * hu;
  }
  d[0] *= denom_[0];
  for (std::size_t i = 1; i < m; ++i) d[i] = (d[i] - off_ * d[i - 1]) * denom_[i];
  for (std::size_t i = m - 1; i-- > 0;) d[i] -= cprime_[i] * d[i + 1];
  for (std::size_t i = 0; i < m; ++i) u[i + 1] = d[i];
  u.front() = 0.0;
  u.back() = 0.0;
}

RadialWavepacket evolve_interacting(const RadialWavepacket& w, const Potential& p, double t, double dt) {
  require_uniform(w.grid, w.u.size(), "interacting evolution");
  RadialWavepacket out = w;
  if (t == 0.0) return out;
  const auto steps = static_cast<std::size_t>(std::llround(t / dt));
  if (steps == 0 || std::abs(static_cast<double>(steps) * dt - t) > 1e-9 * t) {
    fail(ErrorKind::step_size, "t must be a positive multiple of dt");
  }
  const auto v = sample_potential(p, w.grid);
  const CrankNicolson cn(w.grid, v, dt);
  const double n0 = discrete_norm(w.grid, w.u);
  for (std::size_t s = 0; s < steps; ++s) {
    const double before = discrete_norm(w.grid, out.u);
    cn.step(out.u);
    const double after = discrete_norm(w.grid, out.u);
    if (std::abs(after - before) > 1e-8 * std::max(n0, 1e-300)) {
      fail(ErrorKind::step_size, "norm drift " + std::to_string(std::abs(after - before)) + " in one step");
    }
  }
  out.boundary_mass = boundary_mass_fraction(out.grid, out.u);
  check_boundary(out.boundary_mass);
  return out;
}

double discrete_norm(const RadialGrid& grid, std::span<const std::complex<double>> u) {
  const double h = grid[1] - grid[0];
  double s = 0.0;
  for (const auto& x : u) s += std::norm(x);
  return std::sqrt(4.0 * M_PI * h * s);
}

double discrete_energy(const RadialGrid& grid, std::span<const std::complex<double>> u,
                       std::span<const double> potential) {
  const double h = grid[1] - grid[0];
  double e = 0.0;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    const std::complex<double> hu = (2.0 * u[i] - u[i - 1] - u[i + 1]) / (h * h) + 0.5 * potential[i] * u[i];
    e += (std::conj(u[i]) * hu).real();
  }
  return 4.0 * M_PI * h * e;
}

double h1_seminorm(const RadialGrid& grid, std::span<const std::complex<double>> u) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double h = grid[i + 1] - grid[i];
    s += std::norm(u[i + 1] - u[i]) / h;
  }
  return std::sqrt(4.0 * M_PI * s);
}

DefectSample wave_operator_defect(const Potential& p, int n, const DefectSpec& spec) {
  const Potential vn = scale(p, n);
  DefectSample out;
  out.n = n;
  double h = spec.h;
  if (!vn.is_zero()) h = std::min(h, vn.range() / spec.points_per_range);
  auto bps = vn.breakpoints();
  if (bps.size() > 1) bps.erase(bps.begin(), bps.end() - 1);
  RadialWavepacket w;
  w.grid = RadialGrid::build(spec.r_max, h, bps);
  w.u = radial_gaussian(w.grid, spec.packet_width);
  const double g_norm = w.grid.norm(w.u);
  for (auto& x : w.u) x /= g_norm;
  out.spacing = w.grid.max_spacing();
  out.h1_norm = h1_seminorm(w.grid, w.u);

  const auto v = sample_potential(vn, w.grid);
  const std::vector<double> zero(v.size(), 0.0);
  const CrankNicolson interacting(w.grid, v, spec.dt);
  const CrankNicolson free(w.grid, zero, spec.dt);
  RadialFunction a = w.u, b = w.u;
  const double e0 = discrete_energy(w.grid, a, v);
  const double m0 = discrete_norm(w.grid, a);
  std::size_t step = 0;
  for (double target : spec.times) {
    const auto until = static_cast<std::size_t>(std::llround(target / spec.dt));
    for (; step < until; ++step) {
      interacting.step(a);
      free.step(b);
    }
    const double d = l2_distance(w.grid, a, b);
    out.per_time.push_back(d);
    out.defect = std::max(out.defect, d);
  }
  out.boundary_mass = std::max(boundary_mass_fraction(w.grid, a), boundary_mass_fraction(w.grid, b));
  check_boundary(out.boundary_mass);
  const double e1 = discrete_energy(w.grid, a, v);
  out.energy_drift = std::abs(e1 - e0) / std::max(std::abs(e0), 1e-300);
  out.norm_drift = std::abs(discrete_norm(w.grid, a) - m0) / m0;
  return out;
}

DefectCurve convergence_experiment(const Potential& p, const std::vector<int>& n_values, const DefectSpec& spec) {
  if (n_values.size() < 2) fail(ErrorKind::invalid_argument, "convergence experiment needs at least two N values");
  DefectCurve curve;
  curve.n_values = n_values;
  for (int n : n_values) curve.samples.push_back(wave_operator_defect(p, n, spec));
  curve.exact = true;
  curve.strictly_decreasing = true;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const double d = curve.samples[i].defect;
    if (d != 0.0) curve.exact = false;
    if (i > 0 && !(d < curve.samples[i - 1].defect)) curve.strictly_decreasing = false;
    xs.push_back(n_values[i]);
    ys.push_back(d);
  }
  if (curve.exact) {
    curve.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    curve.strictly_decreasing = false;
  } else {
    curve.fitted_slope = loglog_slope(xs, ys);
  }
  return curve;
}

}  // namespace condensate
