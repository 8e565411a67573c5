#pragma once

#include <vector>

#include "condensate/potentials.hpp"
#include "condensate/radial.hpp"
#include "condensate/transform.hpp"

namespace condensate {

// u = r psi on a uniform grid with Dirichlet conditions at 0 and r_max.
struct RadialWavepacket {
  RadialGrid grid;
  RadialFunction u;
  double boundary_mass = 0.0;  // fraction of the mass in the outer 10% of the grid
};

// Fraction of |u|^2 mass in the outer 10% of the grid.
double boundary_mass_fraction(const RadialGrid& grid, std::span<const std::complex<double>> u);

// e^{i Delta t}: exact phases e^{-i k^2 t} in the discrete sine basis,
// k_m = pi m / r_max. Throws "boundary contamination" when more than 1e-4 of
// the mass reaches the outer 10% of the box.
RadialWavepacket evolve_free(const RadialWavepacket& w, double t);

// Crank-Nicolson for h = -d^2/dr^2 + V/2 with the 3-point Laplacian.
class CrankNicolson {
 public:
  CrankNicolson(const RadialGrid& grid, std::span<const double> potential, double dt);
  void step(RadialFunction& u) const;
  double dt() const noexcept { return dt_; }

 private:
  double dt_;
  double h2inv_;
  std::vector<double> v_;
  std::vector<std::complex<double>> cprime_, denom_;
  std::complex<double> off_;
};

RadialWavepacket evolve_interacting(const RadialWavepacket& w, const Potential& p, double t, double dt);

// (4 pi h sum |u_i|^2)^{1/2}, the norm the Crank-Nicolson step conserves.
double discrete_norm(const RadialGrid& grid, std::span<const std::complex<double>> u);

// <u, h u> with the same discrete operator as the Crank-Nicolson scheme (3D normalization).
double discrete_energy(const RadialGrid& grid, std::span<const std::complex<double>> u, std::span<const double> potential);

// ||grad psi|| for psi = u / r: (4 pi int |u'|^2 dr)^{1/2} by centered differences.
double h1_seminorm(const RadialGrid& grid, std::span<const std::complex<double>> u);

struct DefectSpec {
  double packet_width = 1.0;        // Gaussian g width
  double r_max = 20.0;
  double h = 0.02;                  // coarsest spacing
  double points_per_range = 20.0;   // spacing <= range(V_N) / points_per_range
  double dt = 1e-3;
  std::vector<double> times{0.25, 0.5, 1.0};
};

struct DefectSample {
  int n = 1;
  std::vector<double> per_time;  // ||(e^{-i h_N t} - e^{i Delta t}) g|| at spec.times
  double defect = 0.0;           // max over times
  double h1_norm = 0.0;
  double spacing = 0.0;
  double boundary_mass = 0.0;
  double energy_drift = 0.0;     // relative drift of <g_t, h_N g_t>
  double norm_drift = 0.0;       // relative change of discrete_norm
};

// The free reference is the same Crank-Nicolson scheme with V = 0 on the
// same grid, so discretization errors common to both evolutions cancel and
// V = 0 gives exactly zero.
DefectSample wave_operator_defect(const Potential& p, int n, const DefectSpec& spec = {});

struct DefectCurve {
  std::vector<int> n_values;
  std::vector<DefectSample> samples;
  double fitted_slope = 0.0;
  bool exact = false;             // every defect is zero (V = 0)
  bool strictly_decreasing = false;
};

DefectCurve convergence_experiment(const Potential& p, const std::vector<int>& n_values, const DefectSpec& spec = {});

}  // namespace condensate
