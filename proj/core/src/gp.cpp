#include "condensate/gp.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "condensate/error.hpp"

namespace condensate {

Field::Field(std::vector<int> shape, std::vector<double> box_length)
    : shape_(std::move(shape)), box_(std::move(box_length)) {
  if (shape_.empty() || shape_.size() > 3) fail(ErrorKind::invalid_argument, "field dimension must be 1, 2 or 3");
  if (box_.size() != shape_.size()) fail(ErrorKind::invalid_argument, "one box length per axis required");
  std::size_t n = 1;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (shape_[a] < 4 || shape_[a] % 2 != 0) fail(ErrorKind::invalid_argument, "grid points per axis must be even and >= 4");
    if (!(box_[a] > 0.0)) fail(ErrorKind::invalid_argument, "box length must be > 0");
    n *= static_cast<std::size_t>(shape_[a]);
  }
  values_.assign(n, cplx{});
}

double Field::cell_volume() const noexcept {
  double v = 1.0;
  for (std::size_t a = 0; a < shape_.size(); ++a) v *= box_[a] / shape_[a];
  return v;
}

double Field::volume() const noexcept {
  return std::accumulate(box_.begin(), box_.end(), 1.0, std::multiplies<>());
}

void Field::position(std::size_t i, std::span<double> x) const {
  for (int a = dim() - 1; a >= 0; --a) {
    const auto m = static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
    const double h = box_[static_cast<std::size_t>(a)] / static_cast<double>(m);
    x[static_cast<std::size_t>(a)] = -0.5 * box_[static_cast<std::size_t>(a)] + static_cast<double>(i % m) * h;
    i /= m;
  }
}

std::vector<double> Field::wavenumbers(int axis) const {
  const int m = shape_[static_cast<std::size_t>(axis)];
  const double dk = 2.0 * M_PI / box_[static_cast<std::size_t>(axis)];
  std::vector<double> k(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) k[static_cast<std::size_t>(j)] = dk * (j < m / 2 ? j : j - m);
  return k;
}

double Field::mass() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return s * cell_volume();
}

void Field::normalize() {
  const double m = mass();
  if (!(m > 0.0)) fail(ErrorKind::unnormalized, "cannot normalize a field with zero mass");
  const double c = 1.0 / std::sqrt(m);
  for (auto& v : values_) v *= c;
}

void Field::fill(const std::function<cplx(std::span<const double>)>& f) {
  double x[3];
  for (std::size_t i = 0; i < values_.size(); ++i) {
    position(i, std::span<double>(x, shape_.size()));
    values_[i] = f(std::span<const double>(x, shape_.size()));
  }
}

Trap harmonic_trap(double strength) {
  return [strength](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return strength * r2;
  };
}

GPSolver::GPSolver(const Field& layout, const GPConfig& config, bool check_step)
    : config_(config), shape_(layout.shape()), box_(layout.box_length()), plan_(layout.shape()) {
  if (config.coupling < 0.0) fail(ErrorKind::invalid_argument, "coupling must be >= 0 (defocusing)");
  if (!(config.dt > 0.0)) fail(ErrorKind::invalid_argument, "time step must be > 0");
  const std::size_t n = layout.size();
  k2_.assign(n, 0.0);
  top_octave_.assign(n, 0);
  std::vector<std::vector<double>> ks;
  for (int a = 0; a < layout.dim(); ++a) ks.push_back(layout.wavenumbers(a));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    double k2 = 0.0;
    bool top = false;
    for (int a = layout.dim() - 1; a >= 0; --a) {
      const auto m = static_cast<std::size_t>(shape_[static_cast<std::size_t>(a)]);
      const std::size_t j = rest % m;
      rest /= m;
      const double k = ks[static_cast<std::size_t>(a)][j];
      k2 += k * k;
      const long signed_j = j < m / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(m);
      if (std::labs(signed_j) > static_cast<long>(m / 4)) top = true;
    }
    k2_[i] = k2;
    top_octave_[i] = top ? 1 : 0;
    max_k2_ = std::max(max_k2_, k2);
  }
  if (check_step && config.dt * max_k2_ > M_PI) {
    fail(ErrorKind::step_size, "dt * max |k|^2 = " + std::to_string(config.dt * max_k2_) + " exceeds pi");
  }
  kinetic_phase_.resize(n);
  for (std::size_t i = 0; i < n; ++i) kinetic_phase_[i] = std::polar(1.0, -k2_[i] * config.dt);
  if (config.trap) {
    trap_.resize(n);
    double x[3];
    for (std::size_t i = 0; i < n; ++i) {
      layout.position(i, std::span<double>(x, shape_.size()));
      trap_[i] = config.trap(std::span<const double>(x, shape_.size()));
      if (trap_[i] < 0.0) fail(ErrorKind::invalid_argument, "trap potential must be >= 0");
    }
  }
  work_.resize(n);
}

void GPSolver::check_layout(const Field& f) const {
  if (f.shape() != shape_ || f.box_length() != box_) fail(ErrorKind::grid_mismatch, "field layout differs from solver layout");
}

void GPSolver::step(Field& f) const {
  auto& v = f.values();
  const double half = 0.5 * config_.dt;
  const double g = config_.coupling;
  const bool trap = !trap_.empty();
  auto potential_phase = [&]() {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double w = g * std::norm(v[i]) + (trap ? trap_[i] : 0.0);
      v[i] *= std::polar(1.0, -w * half);
    }
  };
  potential_phase();
  plan_.forward(v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= kinetic_phase_[i];
  plan_.inverse(v);
  potential_phase();
  f.time += config_.dt;
}

void GPSolver::evolve(Field& f, double t) const {
  check_layout(f);
  const auto steps = static_cast<std::size_t>(std::llround(t / config_.dt));
  if (std::abs(static_cast<double>(steps) * config_.dt - t) > 1e-9 * std::max(t, 1.0)) {
    fail(ErrorKind::step_size, "t must be a multiple of dt");
  }
  auto guard = [&]() {
    const double top = top_octave_fraction(f);
    if (top > config_.guard_tol) {
      fail(ErrorKind::spectral_blowup, "top-octave mass fraction " + std::to_string(top) + " at t=" +
                                           std::to_string(f.time) + "; refine the grid");
    }
  };
  guard();
  for (std::size_t s = 0; s < steps; ++s) {
    step(f);
    if ((s + 1) % 64 == 0) guard();
  }
  guard();
}

void GPSolver::imaginary_step(Field& f, double dt) const {
  auto& v = f.values();
  const double half = 0.5 * dt;
  const double g = config_.coupling;
  const bool trap = !trap_.empty();
  auto potential_decay = [&]() {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double w = g * std::norm(v[i]) + (trap ? trap_[i] : 0.0);
      v[i] *= std::exp(-w * half);
    }
  };
  potential_decay();
  plan_.forward(v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(-k2_[i] * dt);
  plan_.inverse(v);
  potential_decay();
  f.normalize();
}

GPEnergy GPSolver::energy(const Field& f) const {
  check_layout(f);
  const auto& v = f.values();
  std::copy(v.begin(), v.end(), work_.begin());
  plan_.forward(work_);
  GPEnergy e;
  double kin = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) kin += k2_[i] * std::norm(work_[i]);
  const double dv = f.cell_volume();
  e.kinetic = kin * dv / static_cast<double>(v.size());
  double quartic = 0.0, trap = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double rho = std::norm(v[i]);
    quartic += rho * rho;
    if (!trap_.empty()) trap += trap_[i] * rho;
  }
  e.interaction = 0.5 * config_.coupling * quartic * dv;
  e.trap = trap * dv;
  e.total = e.kinetic + e.interaction + e.trap;
  return e;
}

double GPSolver::top_octave_fraction(const Field& f) const {
  const auto& v = f.values();
  std::copy(v.begin(), v.end(), work_.begin());
  plan_.forward(work_);
  double top = 0.0, total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::norm(work_[i]);
    total += m;
    if (top_octave_[i]) top += m;
  }
  return total > 0.0 ? top / total : 0.0;
}

Field gp_evolve(Field f, const GPConfig& config, double t) {
  GPSolver solver(f, config);
  solver.evolve(f, t);
  return f;
}

GPEnergy gp_energy(const Field& f, const GPConfig& config) { return GPSolver(f, config).energy(f); }

GroundState gp_ground_state(const GPConfig& config, Field init, const GroundStateOptions& options) {
  if (!config.trap && config.coupling == 0.0) {
    fail(ErrorKind::no_minimizer, "no trap and zero coupling: the energy has no normalized minimizer");
  }
  if (std::abs(init.mass() - 1.0) > 1e-8) fail(ErrorKind::unnormalized, "initial field must have unit mass");
  if (options.dt_schedule.empty()) fail(ErrorKind::invalid_argument, "empty imaginary-time schedule");
  const GPSolver solver(init, config, /*check_step=*/false);

  GroundState out;
  double e = solver.energy(init).total;
  out.energies.push_back(e);
  for (double dt : options.dt_schedule) {
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
      solver.imaginary_step(init, dt);
      ++out.iterations;
      const double next = solver.energy(init).total;
      out.energies.push_back(next);
      const double rise = next - e;
      if (rise > 64.0 * std::numeric_limits<double>::epsilon() * std::abs(e)) out.monotone = false;
      out.largest_rise = std::max(out.largest_rise, rise);
      e = next;
      if (-rise < options.tol) break;
    }
  }
  out.energy = e;
  out.field = std::move(init);
  return out;
}

}  // namespace condensate
