#include <gtest/gtest.h>

#include <cmath>

#include "condensate/potentials.hpp"
#include "condensate/scattering.hpp"
#include "support.hpp"

using namespace condensate;
using condensate::testing::for_all;
using condensate::testing::Gen;

namespace {

// Interior u'' = (v0 / 2) u, exterior u = r - a0: a0 = R - tanh(kappa R) / kappa.
double soft_sphere_a0(double v0, double radius) {
  const double kappa = std::sqrt(0.5 * v0);
  return radius - std::tanh(kappa * radius) / kappa;
}

}  // namespace

TEST(ZeroEnergy, FreeEquationGivesZeroLength) {
  const auto sol = solve_zero_energy(Potential::zero());
  EXPECT_EQ(sol.a0_asym, 0.0);
  EXPECT_EQ(sol.a0_int, 0.0);
  for (std::size_t i = 1; i < sol.grid.size(); i += 17) EXPECT_NEAR(sol.u[i] / sol.grid[i], 1.0, 1e-14);
}

TEST(ZeroEnergy, SoftSphereClosedForm) {
  const auto sol = solve_zero_energy(Potential::soft_sphere(2.0, 1.0));
  const double exact = 1.0 - std::tanh(1.0);
  EXPECT_NEAR(sol.a0_asym, exact, 1e-8 * exact);
  EXPECT_NEAR(sol.a0_int, exact, 1e-6 * exact);
}

TEST(ZeroEnergy, WeakGaussianMatchesFirstBornTerm) {
  const double v0 = 0.01;
  const auto sol = solve_zero_energy(Potential::gaussian(v0, 1.0));
  const double born = v0 * std::pow(M_PI, 1.5) / (8.0 * M_PI);
  // The second Born correction is negative and O(v0^2).
  EXPECT_LT(sol.a0_asym, born);
  EXPECT_NEAR(sol.a0_asym, born, 2.0 * born * born);
}

TEST(ZeroEnergy, StateStaysBelowOneInsideTheSupport) {
  const auto sol = solve_zero_energy(Potential::gaussian(3.0, 1.0));
  for (std::size_t i = 1; i < sol.grid.size(); ++i) {
    const double f = sol.u[i] / sol.grid[i];
    EXPECT_GT(f, 0.0);
    EXPECT_LT(f, 1.0);
  }
}

TEST(ScatteringLength, IntegralRouteOnZeroPotential) {
  const Potential v = Potential::zero();
  EXPECT_EQ(scattering_length_integral(solve_zero_energy(v), v), 0.0);
}

TEST(ScatteringLength, ScalesAsOneOverN) {
  for (const auto& base : {Potential::soft_sphere(2.0, 1.0), Potential::gaussian(1.0, 1.0)}) {
    const double a0 = solve_zero_energy(base).a0_int;
    for (int n : {1, 10, 100}) {
      const auto sol = solve_zero_energy(scale(base, n));
      EXPECT_NEAR(sol.a0_int * n, a0, 1e-8 * a0) << "N = " << n;
      EXPECT_NEAR(sol.a0_asym * n, a0, 1e-8 * a0) << "N = " << n;
    }
  }
}

TEST(PhaseShift, VanishesForZeroPotential) {
  for (double k : {1e-3, 0.1, 1.0}) EXPECT_EQ(phase_shift(Potential::zero(), k).delta0, 0.0);
}

TEST(PhaseShift, LowEnergyLimitGivesScatteringLength) {
  const Potential v = Potential::soft_sphere(2.0, 1.0);
  const double a0 = solve_zero_energy(v).a0_asym;
  const auto ps = phase_shift(v, 1e-3);
  EXPECT_NEAR(-ps.delta0 / ps.k, a0, 1e-4);
  EXPECT_NEAR(scattering_length_from_phase(v), a0, 1e-5 * a0);
}

TEST(PhaseShift, WeakGaussianFollowsBornPhase) {
  const double v0 = 0.01;
  const Potential v = Potential::gaussian(v0, 1.0);
  const double a_born = v0 * std::pow(M_PI, 1.5) / (8.0 * M_PI);
  for (double k : {0.01, 0.05, 0.1}) {
    const double d = phase_shift(v, k).delta0;
    EXPECT_NEAR(d, -k * a_born, 0.1 * k * a_born) << "k = " << k;
  }
}

TEST(StateIntegral, ZeroPotential) {
  const auto s = zero_energy_state_integral(Potential::zero());
  EXPECT_EQ(s.integral, 0.0);
  EXPECT_EQ(s.eight_pi_a0, 0.0);
}

TEST(StateIntegral, SoftSphereClosedForm) {
  const auto s = zero_energy_state_integral(Potential::soft_sphere(2.0, 1.0));
  const double exact = 8.0 * M_PI * (1.0 - std::tanh(1.0));
  EXPECT_NEAR(s.integral, exact, 1e-6 * exact);
  EXPECT_LE(s.relative_gap, 1e-6);
}

TEST(StateIntegral, GaussianRoutesAgree) {
  EXPECT_LE(zero_energy_state_integral(Potential::gaussian(1.0, 1.0)).relative_gap, 1e-6);
}

TEST(BornBound, ZeroPotentialIsEquality) { EXPECT_EQ(born_upper_bound(Potential::zero()), 0.0); }

TEST(ScatteringProperty, SoftSphereClosedFormOverParameters) {
  for_all(10, 21, [](Gen& gen) {
    const double v0 = gen.log_uniform(0.05, 20.0);
    const double radius = gen.uniform(0.3, 2.0);
    const auto sol = solve_zero_energy(Potential::soft_sphere(v0, radius));
    const double exact = soft_sphere_a0(v0, radius);
    EXPECT_NEAR(sol.a0_asym, exact, 1e-7 * exact) << "v0 = " << v0 << " R = " << radius;
  });
}

TEST(ScatteringProperty, BornBoundStrictForNonzeroPotentials) {
  for_all(10, 22, [](Gen& gen) {
    const double v0 = gen.log_uniform(0.01, 10.0);
    const double len = gen.uniform(0.3, 2.0);
    const Potential v = gen.integer(0, 1) == 0 ? Potential::soft_sphere(v0, len) : Potential::gaussian(v0, len);
    const auto sol = solve_zero_energy(v);
    EXPECT_LT(sol.a0_asym, born_upper_bound(v));
    EXPECT_GT(sol.a0_asym, 0.0);
  });
}

TEST(ScatteringProperty, MonotoneInHeight) {
  for (bool sphere : {true, false}) {
    double last = 0.0;
    for (double v0 : {0.5, 1.0, 2.0, 4.0}) {
      const Potential v = sphere ? Potential::soft_sphere(v0, 1.0) : Potential::gaussian(v0, 1.0);
      const double a = solve_zero_energy(v).a0_asym;
      EXPECT_GT(a, last) << "v0 = " << v0;
      last = a;
    }
  }
}

TEST(ScatteringProperty, ThreeRoutesAgree) {
  for_all(4, 23, [](Gen& gen) {
    const double v0 = gen.uniform(0.3, 4.0);
    const Potential v = gen.integer(0, 1) == 0 ? Potential::soft_sphere(v0, 1.0) : Potential::gaussian(v0, 1.0);
    const auto sol = solve_zero_energy(v);
    const double from_phase = scattering_length_from_phase(v);
    EXPECT_NEAR(sol.a0_int, sol.a0_asym, 1e-5 * sol.a0_asym);
    EXPECT_NEAR(from_phase, sol.a0_asym, 1e-5 * sol.a0_asym);
  });
}
