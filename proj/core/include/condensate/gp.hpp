#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "condensate/fft.hpp"

namespace condensate {

// Complex field on a periodic box [-L/2, L/2)^d, row-major (last axis fastest).
class Field {
 public:
  Field() = default;
  Field(std::vector<int> shape, std::vector<double> box_length);

  int dim() const noexcept { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const noexcept { return shape_; }
  const std::vector<double>& box_length() const noexcept { return box_; }
  std::size_t size() const noexcept { return values_.size(); }
  double cell_volume() const noexcept;
  double volume() const noexcept;

  std::vector<cplx>& values() noexcept { return values_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  double time = 0.0;

  // Coordinates of flat index i, one entry per axis.
  void position(std::size_t i, std::span<double> x) const;
  // Angular wavenumbers along one axis, FFT ordering.
  std::vector<double> wavenumbers(int axis) const;

  double mass() const;  // int |phi|^2
  void normalize();     // scale to unit mass

  // Fills values from f(x).
  void fill(const std::function<cplx(std::span<const double>)>& f);

 private:
  std::vector<int> shape_;
  std::vector<double> box_;
  std::vector<cplx> values_;
};

using Trap = std::function<double(std::span<const double>)>;

// V_ext = strength * |x|^2.
Trap harmonic_trap(double strength = 1.0);

struct GPConfig {
  double coupling = 0.0;  // g in i phi_t = -Delta phi + g |phi|^2 phi, typically 8 pi a0
  Trap trap;              // optional, must be >= 0
  double dt = 1e-3;
  double guard_tol = 1e-6;  // allowed fraction of the mass in the top Fourier octave
};

struct GPEnergy {
  double kinetic = 0.0;      // int |grad phi|^2
  double interaction = 0.0;  // (g / 2) int |phi|^4
  double trap = 0.0;         // int V_ext |phi|^2
  double total = 0.0;
};

// Strang splitting: half nonlinear + trap phase, exact kinetic step, half
// nonlinear. Precomputes plan, kinetic phases and trap samples for one layout.
class GPSolver {
 public:
  // check_step = false skips the real-time stability bound (imaginary time only).
  GPSolver(const Field& layout, const GPConfig& config, bool check_step = true);

  void step(Field& f) const;                 // one real-time step of size dt
  void evolve(Field& f, double t) const;     // round(t / dt) steps, guard checked at the end
  void imaginary_step(Field& f, double dt) const;  // normalized gradient-flow step
  GPEnergy energy(const Field& f) const;
  double top_octave_fraction(const Field& f) const;
  double max_kinetic() const noexcept { return max_k2_; }
  const GPConfig& config() const noexcept { return config_; }

 private:
  void check_layout(const Field& f) const;
  GPConfig config_;
  std::vector<int> shape_;
  std::vector<double> box_;
  FftPlan plan_;
  std::vector<double> k2_;
  std::vector<char> top_octave_;
  std::vector<cplx> kinetic_phase_;
  std::vector<double> trap_;
  double max_k2_ = 0.0;
  mutable std::vector<cplx> work_;
};

Field gp_evolve(Field f, const GPConfig& config, double t);
GPEnergy gp_energy(const Field& f, const GPConfig& config);

struct GroundStateOptions {
  std::vector<double> dt_schedule{0.01};  // imaginary time steps, one stage per entry
  double tol = 1e-10;        // stop a stage when the energy decrease per step falls below this
  std::size_t max_iterations = 200000;
};

struct GroundState {
  Field field;
  double energy = 0.0;
  std::size_t iterations = 0;
  bool monotone = true;        // energy never rose by more than roundoff
  double largest_rise = 0.0;   // biggest per-step increase seen (0 if monotone in exact arithmetic)
  std::vector<double> energies;  // one entry per iteration
};

GroundState gp_ground_state(const GPConfig& config, Field init, const GroundStateOptions& options = {});

}  // namespace condensate
