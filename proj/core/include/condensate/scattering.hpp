#pragma once

#include <vector>

#include "condensate/potentials.hpp"
#include "condensate/radial.hpp"

namespace condensate {

// Zero values mean "choose automatically": spacing = range / points_per_range,
// r_max = max(50 range, 50 * Born estimate of a0).
struct GridSpec {
  double h = 0.0;
  double r_max = 0.0;
  double points_per_range = 400.0;
  double fit_tol = 1e-8;  // allowed max deviation from affine, relative to slope * window width
};

struct ZeroEnergySolution {
  RadialGrid grid;
  std::vector<double> u;   // r f(r), normalized so that u ~ r - a0 far out
  std::vector<double> du;  // u'(r)
  double a0_asym = 0.0;
  double a0_int = 0.0;
  double consistency_gap = 0.0;  // |a0_int - a0_asym|
  double fit_lo = 0.0;
  double fit_hi = 0.0;
  double fit_nonlinearity = 0.0;
  double residual = 0.0;  // max |u'' - V u / 2| by second differences away from jumps
};

// u'' = V u / 2 with u(0) = 0, integrated by classical RK4.
ZeroEnergySolution solve_zero_energy(const Potential& p, const GridSpec& spec = {});

// (1/8 pi) int V f d^3x = (1/2) int V u r dr on the solution grid, plus the
// analytic remainder of a power-law tail.
double scattering_length_integral(const ZeroEnergySolution& sol, const Potential& p);

// (1/8 pi) int V: first Born approximation, an upper bound for V >= 0.
double born_upper_bound(const Potential& p);

struct PhaseShift {
  double k = 0.0;
  double delta0 = 0.0;
};

// Variable-phase method: delta' = -(V / 2k) sin^2(k r + delta), delta(0) = 0.
PhaseShift phase_shift(const Potential& p, double k, const GridSpec& spec = {});

// -lim delta0(k)/k by Richardson extrapolation from k and 2k (the error is O(k^2)).
double scattering_length_from_phase(const Potential& p, double k = 1e-3, const GridSpec& spec = {});

struct StateIntegral {
  double integral = 0.0;     // int V f d^3x, f = zero-energy state
  double eight_pi_a0 = 0.0;  // 8 pi a0_asym
  double relative_gap = 0.0;
};

// Integrates V f with cell-wise Gauss-Legendre on the cubic Hermite
// interpolant of the RK4 solution, a route independent of the nodal Simpson
// sum behind a0_int.
StateIntegral zero_energy_state_integral(const Potential& p, const GridSpec& spec = {});
StateIntegral zero_energy_state_integral(const ZeroEnergySolution& sol, const Potential& p);

}  // namespace condensate
