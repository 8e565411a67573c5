#pragma once

#include <array>

#include "condensate/potentials.hpp"
#include "condensate/transform.hpp"

namespace condensate {

struct GaussianProfile1D {
  double width = 1.0;
  double center = 0.0;
  double momentum = 0.0;
};

// psi(u, v) = chi(u) g(|v|): chi a product of three 1D Gaussians in the
// centre of mass u = (x1 + x2) / 2, g a radial Gaussian in v = x1 - x2.
struct SeparableState {
  std::array<GaussianProfile1D, 3> chi{};
  double g_width = 1.0;
};

struct SecondMomentResult {
  double lhs = 0.0;    // <psi, H^2 psi>, H = -Delta_u / 2 - 2 Delta_v + V_N(v)
  double rhs = 0.0;    // 2 <W* psi, (Delta_u / 4 - Delta_v)^2 W* psi>
  double slack = 0.0;  // lhs - rhs
  // With exact intertwining the slack equals p4/8 + 3 p2 k2 + 2 k4; this is
  // that expression from the left-hand side moments.
  double dropped_terms = 0.0;
  double intertwining_gap = 0.0;  // relative mismatch of <h> and <h^2> across the two routes
  double p2 = 0.0, p4 = 0.0;      // centre-of-mass moments (quadrature)
  double h1 = 0.0, h2 = 0.0;      // <g, h g> and ||h g||^2 in r-space
  double k2 = 0.0, k4 = 0.0;      // the same moments of W* g in the free basis
};

// Transform for V_2 = scale(p, 2) wide enough for radial Gaussians of width >= min_width.
ScatteringTransform second_moment_transform(const Potential& p, double min_width, double completeness_tol);

// t must have been built for scale(p, 2).
SecondMomentResult second_moment_check(const SeparableState& state, const ScatteringTransform& t);

}  // namespace condensate
