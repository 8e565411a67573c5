#include "condensate/second_moment.hpp"

#include <cmath>
#include <limits>

#include "condensate/error.hpp"
#include "condensate/quadrature.hpp"

namespace condensate {

namespace {

struct ChiMoments {
  double p2 = 0.0;
  double p4 = 0.0;
};

// int |chi'|^2 and int |chi''|^2 for a normalized 1D Gaussian with momentum,
// by adaptive quadrature in x.
ChiMoments chi_moments_quadrature(const GaussianProfile1D& g) {
  const double s2 = g.width * g.width;
  const double norm2 = 1.0 / std::sqrt(M_PI * s2);  // |chi|^2 prefactor
  // chi = A exp(-y^2 / 2 s^2 + i p x), y = x - x0.
  // chi' / chi = -y / s^2 + i p, chi'' / chi = (chi'/chi)^2 - 1 / s^2.
  auto d1 = [&](double y) {
    const std::complex<double> l{-y / s2, g.momentum};
    return norm2 * std::exp(-y * y / s2) * std::norm(l);
  };
  auto d2 = [&](double y) {
    const std::complex<double> l{-y / s2, g.momentum};
    return norm2 * std::exp(-y * y / s2) * std::norm(l * l - 1.0 / s2);
  };
  const double inf = std::numeric_limits<double>::infinity();
  ChiMoments m;
  m.p2 = integrate_checked(d1, -inf, inf, 1e-10, "centre-of-mass <p^2>");
  m.p4 = integrate_checked(d2, -inf, inf, 1e-10, "centre-of-mass <p^4>");
  return m;
}

ChiMoments chi_moments_closed(const GaussianProfile1D& g) {
  const double v = 0.5 / (g.width * g.width);
  const double p = g.momentum;
  return {p * p + v, p * p * p * p + 6.0 * p * p * v + 3.0 * v * v};
}

// Sum over Cartesian components: <P^2> = sum p_c^2, <P^4> = sum p_c^4 + 2 sum_{c<d} p_c^2 p_d^2.
ChiMoments combine(const std::array<ChiMoments, 3>& c) {
  ChiMoments out;
  for (int i = 0; i < 3; ++i) {
    out.p2 += c[i].p2;
    out.p4 += c[i].p4;
    for (int j = i + 1; j < 3; ++j) out.p4 += 2.0 * c[i].p2 * c[j].p2;
  }
  return out;
}

struct RadialMoments {
  double h1 = 0.0;
  double h2 = 0.0;
};

// <g, h g> and ||h g||^2 for the normalized radial Gaussian, h = -d^2/dr^2 + V/2 on u = r g.
RadialMoments radial_moments(const Potential& v, double s) {
  const double c = 1.0 / std::pow(M_PI * s * s, 0.75);
  const double s2 = s * s;
  auto u = [&](double r) { return c * r * std::exp(-0.5 * r * r / s2); };
  auto du = [&](double r) { return c * std::exp(-0.5 * r * r / s2) * (1.0 - r * r / s2); };
  auto d2u = [&](double r) { return c * std::exp(-0.5 * r * r / s2) * (r * r * r / (s2 * s2) - 3.0 * r / s2); };
  auto e1 = [&](double r) {
    const double a = du(r);
    const double b = u(r);
    return a * a + 0.5 * v(r) * b * b;
  };
  auto e2 = [&](double r) {
    const double hu = -d2u(r) + 0.5 * v(r) * u(r);
    return hu * hu;
  };
  const std::vector<double> edges = quadrature_edges(v, std::numeric_limits<double>::infinity());
  RadialMoments m;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    m.h1 += integrate_checked(e1, edges[i], edges[i + 1], 1e-10, "<g, h g>");
    m.h2 += integrate_checked(e2, edges[i], edges[i + 1], 1e-10, "||h g||^2");
  }
  m.h1 *= 4.0 * M_PI;
  m.h2 *= 4.0 * M_PI;
  return m;
}

}  // namespace

ScatteringTransform second_moment_transform(const Potential& p, double min_width, double completeness_tol) {
  if (!(min_width > 0.0)) fail(ErrorKind::invalid_argument, "radial width must be > 0");
  TransformSpec spec;
  spec.k_max = 12.0 / min_width;
  spec.completeness_tol = completeness_tol;
  return build_transform(scale(p, 2), spec);
}

SecondMomentResult second_moment_check(const SeparableState& state, const ScatteringTransform& t) {
  const Potential& v = t.potential();
  if (v.scale() != 2) fail(ErrorKind::invalid_argument, "second-moment check is defined for N = 2");
  for (const auto& c : state.chi) {
    if (!(c.width > 0.0)) fail(ErrorKind::invalid_argument, "centre-of-mass width must be > 0");
  }
  if (!(state.g_width > 0.0)) fail(ErrorKind::invalid_argument, "radial width must be > 0");

  std::array<ChiMoments, 3> quad{}, closed{};
  for (int c = 0; c < 3; ++c) {
    quad[c] = chi_moments_quadrature(state.chi[c]);
    closed[c] = chi_moments_closed(state.chi[c]);
  }
  const ChiMoments pq = combine(quad);
  const ChiMoments pc = combine(closed);
  const RadialMoments rm = radial_moments(v, state.g_width);

  // W* g, then its moments in the free sine basis.
  const RadialFunction g = radial_gaussian(t.grid(), state.g_width);
  const RadialFunction wg = apply_wave_operator(t, g, /*adjoint=*/true);
  const RadialFunction c = t.forward(wg, /*free=*/true);
  double k2 = 0.0, k4 = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = t.k()[j];
    const double w = t.k_weights()[j] * std::norm(c[j]);
    k2 += w * k * k;
    k4 += w * k * k * k * k;
  }
  k2 *= 4.0 * M_PI;
  k4 *= 4.0 * M_PI;

  SecondMomentResult out;
  out.p2 = pq.p2;
  out.p4 = pq.p4;
  out.h1 = rm.h1;
  out.h2 = rm.h2;
  out.k2 = k2;
  out.k4 = k4;
  out.lhs = 0.25 * pq.p4 + 4.0 * rm.h2 + 2.0 * pq.p2 * rm.h1;
  out.rhs = 2.0 * k4 - pc.p2 * k2 + 0.125 * pc.p4;
  out.slack = out.lhs - out.rhs;
  out.dropped_terms = 0.125 * pq.p4 + 3.0 * pq.p2 * rm.h1 + 2.0 * rm.h2;
  const double gap1 = rm.h1 != 0.0 ? std::abs(k2 - rm.h1) / rm.h1 : std::abs(k2);
  const double gap2 = rm.h2 != 0.0 ? std::abs(k4 - rm.h2) / rm.h2 : std::abs(k4);
  out.intertwining_gap = std::max(gap1, gap2);
  return out;
}

}  // namespace condensate
