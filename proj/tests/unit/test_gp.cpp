#include <gtest/gtest.h>

#include <cmath>

#include "condensate/gp.hpp"
#include "condensate/quadrature.hpp"
#include "support.hpp"

using namespace condensate;
using condensate::testing::error_kind;

namespace {

Field field1d(int points, double box) { return Field({points}, {box}); }

void gaussian(Field& f, double width, double momentum = 0.0) {
  f.fill([&](std::span<const double> x) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    return std::polar(std::exp(-r2 / (2.0 * width * width)), momentum * x[0]);
  });
  f.normalize();
}

GPConfig config(double g, double dt) {
  GPConfig c;
  c.coupling = g;
  c.dt = dt;
  return c;
}

double distance(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s * a.cell_volume());
}

}  // namespace

TEST(GPEvolve, FreePlaneWavePicksUpExactPhase) {
  const double box = 2.0 * M_PI;
  Field f = field1d(64, box);
  const double k = 3.0;
  f.fill([&](std::span<const double> x) { return std::polar(1.0, k * x[0]); });
  const Field out = gp_evolve(f, config(0.0, 1e-3), 1.0);
  std::vector<double> x(1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.position(i, x);
    EXPECT_NEAR(std::abs(out[i] - std::polar(1.0, k * x[0] - k * k)), 0.0, 1e-10);
  }
}

TEST(GPEvolve, PlaneWaveDispersionWithCoupling) {
  const double box = 20.0;
  Field f = field1d(128, box);
  const double k = 2.0 * M_PI * 2.0 / box;
  const double amp = 0.7;
  const double g = 3.0;
  f.fill([&](std::span<const double> x) { return std::polar(amp, k * x[0]); });
  const Field out = gp_evolve(f, config(g, 1e-3), 1.0);
  const double omega = k * k + g * amp * amp;
  std::vector<double> x(1);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.position(i, x);
    err = std::max(err, std::abs(out[i] - std::polar(amp, k * x[0] - omega)));
  }
  EXPECT_LE(err / amp, 1e-6);
}

TEST(GPEvolve, FreeGaussianSpreadsAnalytically) {
  Field f = field1d(512, 40.0);
  gaussian(f, 1.0);
  const Field out = gp_evolve(f, config(0.0, 1e-3), 1.0);
  // i phi_t = -phi_xx: e^{-x^2/2} -> (1 / (1 + 2 i t))^{1/2} e^{-x^2 / 2(1 + 2 i t)}
  const std::complex<double> a(1.0, 2.0);
  const std::complex<double> pref = std::sqrt(1.0 / a);
  const double norm = f[f.size() / 2].real();  // value at x = 0
  std::vector<double> x(1);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.position(i, x);
    s += std::norm(out[i] - norm * pref * std::exp(-0.5 * x[0] * x[0] / a));
  }
  EXPECT_LE(std::sqrt(s * f.cell_volume()), 1e-6);
}

TEST(GPEnergy, ConstantFieldHasNoKineticEnergy) {
  Field f = field1d(32, 10.0);
  f.fill([](std::span<const double>) { return cplx(0.3, 0.0); });
  EXPECT_NEAR(gp_energy(f, config(0.0, 1e-3)).kinetic, 0.0, 1e-14);
}

TEST(GPEnergy, PlaneWaveClosedForms) {
  const double box = 10.0;
  Field f = field1d(64, box);
  const double k = 2.0 * M_PI * 3.0 / box;
  const double amp = 0.8;
  const double g = 2.5;
  f.fill([&](std::span<const double> x) { return std::polar(amp, k * x[0]); });
  const auto e = gp_energy(f, config(g, 1e-3));
  EXPECT_NEAR(e.kinetic, k * k * amp * amp * box, 1e-10);
  EXPECT_NEAR(e.interaction, 0.5 * g * std::pow(amp, 4) * box, 1e-10);
  EXPECT_EQ(e.trap, 0.0);
  EXPECT_NEAR(e.total, e.kinetic + e.interaction, 1e-12);
}

TEST(GPEvolve, ConservesMassAndEnergy) {
  Field f = field1d(128, 20.0);
  gaussian(f, 2.0, 0.5);
  const GPConfig c = config(1.0, 1e-3);
  const GPSolver solver(f, c);
  const double m0 = f.mass();
  const double e0 = solver.energy(f).total;
  double drift = 0.0;
  for (int chunk = 0; chunk < 20; ++chunk) {
    solver.evolve(f, 0.05);
    drift = std::max(drift, std::abs(solver.energy(f).total - e0) / std::abs(e0));
  }
  EXPECT_LE(std::abs(f.mass() - m0) / m0, 1e-10);
  EXPECT_LE(drift, 1e-8);
}

TEST(GPEvolve, SecondOrderInTime) {
  Field f = field1d(128, 20.0);
  gaussian(f, 1.0, 0.5);
  const Field ref = gp_evolve(f, config(1.0, 1.25e-4), 1.0);
  std::vector<double> dts{4e-3, 2e-3, 1e-3}, errs;
  for (double dt : dts) errs.push_back(distance(gp_evolve(f, config(1.0, dt), 1.0), ref));
  EXPECT_NEAR(loglog_slope(dts, errs), 2.0, 0.1);
}

TEST(GPEvolve, TimeReversal) {
  Field f = field1d(128, 20.0);
  gaussian(f, 1.5, 0.7);
  Field out = gp_evolve(f, config(2.0, 1e-3), 0.5);
  for (auto& v : out.values()) v = std::conj(v);
  out = gp_evolve(out, config(2.0, 1e-3), 0.5);
  for (auto& v : out.values()) v = std::conj(v);
  EXPECT_LE(distance(out, f), 1e-8);
}

TEST(GPEvolve, RejectsUnstableStep) {
  Field f = field1d(256, 10.0);
  gaussian(f, 1.0);
  EXPECT_EQ(error_kind([&] { (void)gp_evolve(f, config(1.0, 0.1), 1.0); }), ErrorKind::step_size);
}

TEST(GPEvolve, RejectsForeignLayout) {
  Field a = field1d(64, 10.0);
  gaussian(a, 1.0);
  Field b = field1d(128, 10.0);
  gaussian(b, 1.0);
  const GPSolver solver(a, config(1.0, 1e-3));
  EXPECT_EQ(error_kind([&] { solver.step(b); }), ErrorKind::grid_mismatch);
}

TEST(GroundState, HarmonicOscillatorEnergyEqualsDimension) {
  for (int d : {1, 3}) {
    const int points = d == 1 ? 128 : 32;
    Field init(std::vector<int>(d, points), std::vector<double>(d, 16.0));
    gaussian(init, 1.5);
    GPConfig c = config(0.0, 0.01);
    c.trap = harmonic_trap(1.0);
    const auto gs = gp_ground_state(c, init);
    EXPECT_NEAR(gs.energy, static_cast<double>(d), 1e-4) << "d = " << d;
    EXPECT_TRUE(gs.monotone) << "largest rise " << gs.largest_rise;
    for (std::size_t i = 1; i < gs.energies.size(); ++i) {
      ASSERT_LE(gs.energies[i], gs.energies[i - 1] + 64 * 2.2e-16 * std::abs(gs.energies[i - 1])) << "iteration " << i;
    }
  }
}

TEST(GroundState, EnergyIncreasesWithCoupling) {
  double last = -1.0;
  for (double g : {0.0, 1.0, 10.0}) {
    Field init = field1d(128, 16.0);
    gaussian(init, 1.5);
    GPConfig c = config(g, 0.01);
    c.trap = harmonic_trap(1.0);
    const double e = gp_ground_state(c, init).energy;
    EXPECT_GT(e, last) << "g = " << g;
    last = e;
  }
}
